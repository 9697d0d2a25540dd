//! Supersingular ℓ-isogeny graphs for small primes, their Brandt matrices, and
//! the Hurwitz class-number trace formulas that count loops, multi-edges and
//! collisions in them.
//!
//! All arithmetic is exact; no floating point appears in any result.

pub mod analytics;
pub mod arith;
pub mod brandt;
pub mod cache;
pub mod classnum;
pub mod congruence;
pub mod error;
pub mod export;
pub mod ssgraph;

pub use error::{Error, Result};
