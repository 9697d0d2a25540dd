//! Class numbers of imaginary quadratic orders and Hurwitz class numbers.
//!
//! `H(D)` is memoized process-wide; `H_p(D)` is derived on demand from the
//! memoized `H` and a single Kronecker symbol.

use std::collections::HashMap;
use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub};
use std::sync::{LazyLock, RwLock};

use num_integer::Integer;
use num_rational::Ratio;
use num_traits::{Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::arith::{is_prime, isqrt, kronecker};
use crate::error::{Error, Result};

/// Reduced fraction with positive denominator.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ExactRational(Ratio<i64>);

impl ExactRational {
    pub fn new(numer: i64, denom: i64) -> Self {
        ExactRational(Ratio::new(numer, denom))
    }

    pub fn from_int(n: i64) -> Self {
        ExactRational(Ratio::from_integer(n))
    }

    pub fn zero() -> Self {
        ExactRational(Ratio::zero())
    }

    pub fn numer(&self) -> i64 {
        *self.0.numer()
    }

    pub fn denom(&self) -> i64 {
        *self.0.denom()
    }

    pub fn is_integer(&self) -> bool {
        self.0.is_integer()
    }

    pub fn is_negative(&self) -> bool {
        self.0.is_negative()
    }

    /// The value as an integer, if it is one.
    pub fn to_integer(&self) -> Option<i64> {
        self.is_integer().then(|| self.numer())
    }

    pub fn floor(&self) -> i64 {
        self.0.floor().to_integer()
    }

    pub fn ceil(&self) -> i64 {
        self.0.ceil().to_integer()
    }

    pub fn to_f64(&self) -> f64 {
        self.0.to_f64().unwrap_or(f64::NAN)
    }
}

impl fmt::Display for ExactRational {
    /// Always `num/den`, including integers (`9/1`) and negatives (`-1/12`).
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.numer(), self.denom())
    }
}

impl std::str::FromStr for ExactRational {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::Parse(format!("invalid fraction {s:?}"));
        match s.split_once('/') {
            Some((n, d)) => {
                let n: i64 = n.trim().parse().map_err(|_| bad())?;
                let d: i64 = d.trim().parse().map_err(|_| bad())?;
                if d == 0 {
                    return Err(bad());
                }
                Ok(ExactRational::new(n, d))
            }
            None => Ok(ExactRational::from_int(
                s.trim().parse().map_err(|_| bad())?,
            )),
        }
    }
}

impl Serialize for ExactRational {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for ExactRational {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

impl Add for ExactRational {
    type Output = Self;
    fn add(self, rhs: Self) -> Self {
        ExactRational(self.0 + rhs.0)
    }
}

impl AddAssign for ExactRational {
    fn add_assign(&mut self, rhs: Self) {
        self.0 += rhs.0;
    }
}

impl Sub for ExactRational {
    type Output = Self;
    fn sub(self, rhs: Self) -> Self {
        ExactRational(self.0 - rhs.0)
    }
}

impl Mul for ExactRational {
    type Output = Self;
    fn mul(self, rhs: Self) -> Self {
        ExactRational(self.0 * rhs.0)
    }
}

impl Neg for ExactRational {
    type Output = Self;
    fn neg(self) -> Self {
        ExactRational(-self.0)
    }
}

impl std::iter::Sum for ExactRational {
    fn sum<I: Iterator<Item = Self>>(iter: I) -> Self {
        iter.fold(ExactRational::zero(), |a, b| a + b)
    }
}

/// `-D = d_fund * conductor^2` with `d_fund` a fundamental discriminant.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct DiscriminantDecomposition {
    pub d_fund: i64,
    pub conductor: u64,
}

fn is_discriminant(d: i64) -> bool {
    matches!(d.rem_euclid(4), 0 | 1)
}

fn is_squarefree(mut m: u64) -> bool {
    let mut q = 2u64;
    while q * q <= m {
        if m.is_multiple_of(q * q) {
            return false;
        }
        if m.is_multiple_of(q) {
            m /= q;
        }
        q += 1;
    }
    true
}

/// Whether `d` (negative) is a fundamental discriminant.
pub fn is_fundamental(d: i64) -> bool {
    if d >= 0 {
        return false;
    }
    let a = d.unsigned_abs();
    match d.rem_euclid(4) {
        1 => is_squarefree(a),
        0 => {
            let m = d / 4;
            matches!(m.rem_euclid(4), 2 | 3) && is_squarefree(m.unsigned_abs())
        }
        _ => false,
    }
}

fn check_negative_discriminant(d: i64) -> Result<()> {
    if d >= 0 || !is_discriminant(d) {
        return Err(Error::domain(format!(
            "{d} is not a negative discriminant (need d < 0, d ≡ 0 or 1 mod 4)"
        )));
    }
    Ok(())
}

/// Split `-D` into fundamental discriminant and conductor.
pub fn decompose(big_d: u64) -> Result<DiscriminantDecomposition> {
    let d = -(big_d as i64);
    check_negative_discriminant(d)?;
    let mut f = isqrt(big_d);
    while f >= 1 {
        if big_d.is_multiple_of(f * f) {
            let cand = d / (f * f) as i64;
            if is_discriminant(cand) {
                debug_assert!(is_fundamental(cand));
                return Ok(DiscriminantDecomposition {
                    d_fund: cand,
                    conductor: f,
                });
            }
        }
        f -= 1;
    }
    unreachable!("f = 1 always yields a discriminant")
}

static CLASS_NUMBERS: LazyLock<RwLock<HashMap<i64, u64>>> =
    LazyLock::new(|| RwLock::new(HashMap::new()));
static HURWITZ: LazyLock<RwLock<HashMap<u64, ExactRational>>> =
    LazyLock::new(|| RwLock::new(HashMap::new()));

fn memoized<K, V, F>(table: &RwLock<HashMap<K, V>>, key: K, compute: F) -> V
where
    K: std::hash::Hash + Eq + Copy,
    V: Copy,
    F: FnOnce() -> V,
{
    if let Some(v) = table.read().expect("memo lock poisoned").get(&key) {
        return *v;
    }
    let v = compute();
    table.write().expect("memo lock poisoned").insert(key, v);
    v
}

/// Number of reduced primitive forms `(a, b, c)` with `b^2 - 4ac = d`.
pub fn class_number(d: i64) -> Result<u64> {
    check_negative_discriminant(d)?;
    Ok(memoized(&CLASS_NUMBERS, d, || count_reduced_forms(d, true)))
}

/// Reduced forms: `|b| <= a <= c`, and `b >= 0` whenever `|b| = a` or `a = c`.
fn count_reduced_forms(d: i64, primitive_only: bool) -> u64 {
    let big_d = -d;
    let mut count = 0u64;
    let mut a = 1i64;
    while 3 * a * a <= big_d {
        for b in -a..=a {
            if (b - d).rem_euclid(2) != 0 {
                continue;
            }
            let num = b * b - d;
            if num % (4 * a) != 0 {
                continue;
            }
            let c = num / (4 * a);
            if c < a {
                continue;
            }
            if b < 0 && (-b == a || a == c) {
                continue;
            }
            if primitive_only && a.gcd(&b).gcd(&c) != 1 {
                continue;
            }
            count += 1;
        }
        a += 1;
    }
    count
}

/// `#O^× / 2`: 3 for `d = -3`, 2 for `d = -4`, otherwise 1.
pub fn unit_factor(d: i64) -> Result<u64> {
    check_negative_discriminant(d)?;
    Ok(match d {
        -3 => 3,
        -4 => 2,
        _ => 1,
    })
}

/// Hurwitz class number `H(D)`; `H(0) = -1/12` and `H(D) = 0` for
/// `D ≡ 1, 2 (mod 4)`.
pub fn hurwitz(big_d: u64) -> ExactRational {
    if big_d == 0 {
        return ExactRational::new(-1, 12);
    }
    if !matches!(big_d % 4, 0 | 3) {
        return ExactRational::zero();
    }
    memoized(&HURWITZ, big_d, || {
        let mut total = ExactRational::zero();
        let mut f = 1u64;
        while f * f <= big_d {
            if big_d.is_multiple_of(f * f) {
                let d = -((big_d / (f * f)) as i64);
                if is_discriminant(d) {
                    let h = class_number(d).expect("d is a discriminant") as i64;
                    let u = unit_factor(d).expect("d is a discriminant") as i64;
                    total += ExactRational::new(h, u);
                }
            }
            f += 1;
        }
        total
    })
}

/// How `p` behaves in the order of discriminant `-D`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PrimeBehaviour {
    Split,
    Inert,
    Ramified,
    DividesConductor,
}

/// Splitting type of `p` in `O_{-D}` for `D > 0`, `D ≡ 0, 3 (mod 4)`.
pub fn prime_behaviour(big_d: u64, p: u64) -> Result<PrimeBehaviour> {
    let dec = decompose(big_d)?;
    if dec.conductor % p == 0 {
        return Ok(PrimeBehaviour::DividesConductor);
    }
    Ok(match kronecker(dec.d_fund, p) {
        1 => PrimeBehaviour::Split,
        -1 => PrimeBehaviour::Inert,
        _ => PrimeBehaviour::Ramified,
    })
}

/// Modified Hurwitz class number `H_p(D)` for a prime `p >= 5`.
pub fn hurwitz_modified(big_d: u64, p: u64) -> Result<ExactRational> {
    if p < 5 || !is_prime(p) {
        return Err(Error::domain(format!("p = {p} must be a prime >= 5")));
    }
    if big_d == 0 {
        return Ok(ExactRational::new(p as i64 - 1, 24));
    }
    if !matches!(big_d % 4, 0 | 3) {
        return Ok(ExactRational::zero());
    }
    Ok(match prime_behaviour(big_d, p)? {
        PrimeBehaviour::Split => ExactRational::zero(),
        PrimeBehaviour::Inert => hurwitz(big_d),
        PrimeBehaviour::Ramified => hurwitz(big_d) * ExactRational::new(1, 2),
        PrimeBehaviour::DividesConductor => hurwitz(big_d / (p * p)),
    })
}

/// `Σ_{d | m} d`.
pub fn sigma(m: u64) -> u64 {
    crate::arith::divisors(m).into_iter().sum()
}
