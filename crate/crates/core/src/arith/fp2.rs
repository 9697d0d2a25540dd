//! The quadratic extension `F_p[t] / (t^2 - c)`.
//!
//! `c` is always the smallest positive quadratic nonresidue modulo `p`, so a
//! given `p` has exactly one coordinate system and every element (in
//! particular every j-invariant) has a reproducible `(c0, c1)` label.

use std::fmt;

use serde::{Deserialize, Serialize};

use super::modular::{is_prime, kronecker, mul_mod, reduce_signed};
use crate::error::{Error, Result};

/// Largest accepted characteristic (exclusive).
pub const MAX_PRIME: u64 = 1 << 31;

/// Element `c0 + c1 * t`, with both coordinates in `[0, p)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Fp2 {
    pub c0: u64,
    pub c1: u64,
}

impl Fp2 {
    pub const ZERO: Fp2 = Fp2 { c0: 0, c1: 0 };
    pub const ONE: Fp2 = Fp2 { c0: 1, c1: 0 };

    pub const fn new(c0: u64, c1: u64) -> Self {
        Fp2 { c0, c1 }
    }

    pub fn is_zero(&self) -> bool {
        self.c0 == 0 && self.c1 == 0
    }

    /// True when the element lies in the prime field.
    pub fn is_in_base_field(&self) -> bool {
        self.c1 == 0
    }

    /// Sort key used for the canonical vertex order: `(c1, c0)` ascending.
    pub fn canonical_key(&self) -> (u64, u64) {
        (self.c1, self.c0)
    }

    /// Parse the `"a+b*t"` text form written by [`Fp2`]'s `Display`.
    pub fn parse(s: &str) -> Result<Self> {
        let bad = || Error::Parse(format!("invalid F_p^2 element {s:?}, expected \"a+b*t\""));
        let (a, rest) = s.trim().split_once('+').ok_or_else(bad)?;
        let b = rest.strip_suffix("*t").ok_or_else(bad)?;
        let c0 = a.trim().parse().map_err(|_| bad())?;
        let c1 = b.trim().parse().map_err(|_| bad())?;
        Ok(Fp2 { c0, c1 })
    }
}

impl fmt::Display for Fp2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}+{}*t", self.c0, self.c1)
    }
}

/// Field context: characteristic `p` and the nonresidue `c` with `t^2 = c`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Fp2Field {
    p: u64,
    c: u64,
}

impl Fp2Field {
    /// Build `F_{p^2}` for an odd prime `p < 2^31`.
    pub fn new(p: u64) -> Result<Self> {
        if p >= MAX_PRIME {
            return Err(Error::domain(format!(
                "p = {p} exceeds the supported bound 2^31"
            )));
        }
        if p == 2 || !is_prime(p) {
            return Err(Error::domain(format!("p = {p} is not an odd prime")));
        }
        let c = (2..p)
            .find(|&a| kronecker(a as i64, p) == -1)
            .expect("every odd prime has a quadratic nonresidue");
        Ok(Fp2Field { p, c })
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    /// The nonresidue `c = t^2`.
    pub fn nonresidue(&self) -> u64 {
        self.c
    }

    /// Embed an integer (reduced mod p) in the base field.
    pub fn from_int(&self, a: i64) -> Fp2 {
        Fp2::new(reduce_signed(a, self.p), 0)
    }

    /// The generator `t` itself.
    pub fn t(&self) -> Fp2 {
        Fp2::new(0, 1)
    }

    /// Checks that both coordinates are reduced.
    pub fn contains(&self, a: Fp2) -> bool {
        a.c0 < self.p && a.c1 < self.p
    }

    #[inline]
    fn add_p(&self, a: u64, b: u64) -> u64 {
        let s = a + b;
        if s >= self.p {
            s - self.p
        } else {
            s
        }
    }

    #[inline]
    fn sub_p(&self, a: u64, b: u64) -> u64 {
        if a >= b {
            a - b
        } else {
            a + self.p - b
        }
    }

    #[inline]
    pub fn add(&self, a: Fp2, b: Fp2) -> Fp2 {
        Fp2::new(self.add_p(a.c0, b.c0), self.add_p(a.c1, b.c1))
    }

    #[inline]
    pub fn sub(&self, a: Fp2, b: Fp2) -> Fp2 {
        Fp2::new(self.sub_p(a.c0, b.c0), self.sub_p(a.c1, b.c1))
    }

    #[inline]
    pub fn neg(&self, a: Fp2) -> Fp2 {
        self.sub(Fp2::ZERO, a)
    }

    #[inline]
    pub fn mul(&self, a: Fp2, b: Fp2) -> Fp2 {
        let p = self.p;
        // (a0 + a1 t)(b0 + b1 t) = a0 b0 + c a1 b1 + (a0 b1 + a1 b0) t
        // p < 2^31 so each product fits in u64 before reduction.
        let a0b0 = a.c0 * b.c0 % p;
        let a1b1 = a.c1 * b.c1 % p;
        let c0 = (a0b0 + self.c * a1b1) % p;
        let c1 = (a.c0 * b.c1 + a.c1 * b.c0) % p;
        Fp2::new(c0, c1)
    }

    #[inline]
    pub fn square(&self, a: Fp2) -> Fp2 {
        self.mul(a, a)
    }

    /// Multiply by a base-field scalar.
    #[inline]
    pub fn scale(&self, a: Fp2, k: u64) -> Fp2 {
        let k = k % self.p;
        Fp2::new(mul_mod(a.c0, k, self.p), mul_mod(a.c1, k, self.p))
    }

    /// Norm `a0^2 - c a1^2` down to `F_p`.
    pub fn norm(&self, a: Fp2) -> u64 {
        let p = self.p;
        let x = a.c0 * a.c0 % p;
        let y = self.c * (a.c1 * a.c1 % p) % p;
        self.sub_p(x, y)
    }

    /// Multiplicative inverse via the norm map.
    pub fn inv(&self, a: Fp2) -> Result<Fp2> {
        if a.is_zero() {
            return Err(Error::domain("inversion of zero in F_p^2"));
        }
        let n = self.norm(a);
        let n_inv = super::modular::pow_mod(n, self.p - 2, self.p);
        let conj = Fp2::new(a.c0, self.sub_p(0, a.c1));
        Ok(self.scale(conj, n_inv))
    }

    /// `a^e` by square-and-multiply.
    pub fn pow(&self, a: Fp2, mut e: u64) -> Fp2 {
        let mut base = a;
        let mut acc = Fp2::ONE;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.square(base);
            e >>= 1;
        }
        acc
    }

    /// Frobenius `a -> a^p`, which conjugates `t -> -t`.
    pub fn frobenius(&self, a: Fp2) -> Fp2 {
        Fp2::new(a.c0, self.sub_p(0, a.c1))
    }

    /// Every element of the field, `(c1, c0)`-ordered. Only sensible for tiny `p`.
    pub fn elements(&self) -> impl Iterator<Item = Fp2> + '_ {
        (0..self.p).flat_map(move |c1| (0..self.p).map(move |c0| Fp2::new(c0, c1)))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn nonresidue_is_smallest() {
        let f = Fp2Field::new(13).unwrap();
        assert_eq!(f.nonresidue(), 2);
        let f = Fp2Field::new(109).unwrap();
        // 2 is a nonresidue mod 109 (109 ≡ 5 mod 8)
        assert_eq!(f.nonresidue(), 2);
        let f = Fp2Field::new(73).unwrap();
        assert_eq!(f.nonresidue(), 5);
    }

    #[test]
    fn rejects_bad_characteristic() {
        assert!(Fp2Field::new(2).is_err());
        assert!(Fp2Field::new(15).is_err());
        assert!(Fp2Field::new(2_147_483_659).is_err());
    }

    #[test]
    fn identity_and_defining_relation() {
        let f = Fp2Field::new(13).unwrap();
        assert_eq!(f.inv(Fp2::ONE).unwrap(), Fp2::ONE);
        assert_eq!(f.square(f.t()), Fp2::new(f.nonresidue(), 0));
        assert!(f.inv(Fp2::ZERO).is_err());
    }

    #[test]
    fn multiplicative_order_divides_group_order() {
        let f = Fp2Field::new(13).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        let mut seen = 0;
        while seen < 20 {
            let a = Fp2::new(rng.gen_range(0..13), rng.gen_range(0..13));
            if a.is_zero() {
                continue;
            }
            // brute-force order: repeated multiplication until we return to 1
            let mut x = a;
            let mut order = 1u64;
            while x != Fp2::ONE {
                x = f.mul(x, a);
                order += 1;
            }
            assert_eq!(168 % order, 0);
            assert_eq!(f.pow(a, 168), Fp2::ONE);
            seen += 1;
        }
    }

    #[test]
    fn frobenius_matches_pow() {
        let f = Fp2Field::new(37).unwrap();
        for a in f.elements().step_by(17) {
            assert_eq!(f.frobenius(a), f.pow(a, 37));
            assert_eq!(f.pow(a, 37 * 37), a);
        }
    }

    #[test]
    fn text_form_round_trips() {
        let a = Fp2::new(12, 5);
        assert_eq!(a.to_string(), "12+5*t");
        assert_eq!(Fp2::parse("12+5*t").unwrap(), a);
        assert!(Fp2::parse("12-5*t").is_err());
    }
}
