//! Exact arithmetic over `Z`, `F_p` and `F_{p^2}`.

mod fp2;
mod modular;
mod poly;

pub use fp2::{Fp2, Fp2Field, MAX_PRIME};
pub use modular::{
    divisors, is_prime, isqrt, kronecker, mul_mod, next_prime, pow_mod, prime_factors,
    reduce_signed,
};
pub use poly::{roots_with_multiplicity, PolyFp2};
