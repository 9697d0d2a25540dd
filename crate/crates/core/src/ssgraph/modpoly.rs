//! Classical modular polynomials and their reduction modulo `p`.

use std::collections::BTreeMap;

use super::modpoly_data::{PHI_2, PHI_3, PHI_5, PHI_7};
use crate::arith::{Fp2, Fp2Field, PolyFp2};
use crate::error::{Error, Result};

/// Degrees for which a modular polynomial is shipped.
pub const SUPPORTED_ELLS: [u64; 4] = [2, 3, 5, 7];

/// Integer bivariate polynomial `Φ_ℓ(X, Y)`, coefficients as decimal text.
#[derive(Clone, Copy, Debug)]
pub struct ModularPolynomial {
    ell: u64,
    terms: &'static [(u32, u32, &'static str)],
}

/// `c mod m` for a signed decimal integer of arbitrary length.
fn decimal_mod(c: &str, m: u64) -> u64 {
    let (neg, digits) = match c.strip_prefix('-') {
        Some(rest) => (true, rest),
        None => (false, c),
    };
    let r = digits.bytes().fold(0u64, |acc, b| {
        debug_assert!(b.is_ascii_digit());
        ((acc as u128 * 10 + (b - b'0') as u128) % m as u128) as u64
    });
    if neg && r != 0 {
        m - r
    } else {
        r
    }
}

impl ModularPolynomial {
    pub fn get(ell: u64) -> Result<Self> {
        let terms = match ell {
            2 => PHI_2,
            3 => PHI_3,
            5 => PHI_5,
            7 => PHI_7,
            _ => {
                return Err(Error::domain(format!(
                    "ℓ = {ell} is not supported (choose one of 2, 3, 5, 7)"
                )))
            }
        };
        Ok(ModularPolynomial { ell, terms })
    }

    pub fn ell(&self) -> u64 {
        self.ell
    }

    pub fn terms(&self) -> &'static [(u32, u32, &'static str)] {
        self.terms
    }

    /// Coefficients reduced modulo `m`, keyed by `(deg_X, deg_Y)`, zeros dropped.
    pub fn reduce(&self, m: u64) -> BTreeMap<(u32, u32), u64> {
        self.terms
            .iter()
            .map(|&(i, j, c)| ((i, j), decimal_mod(c, m)))
            .filter(|&(_, v)| v != 0)
            .collect()
    }

    /// `Φ_ℓ(X, Y) = Φ_ℓ(Y, X)` coefficientwise.
    pub fn check_symmetry(&self) -> Result<()> {
        let map: BTreeMap<(u32, u32), &str> =
            self.terms.iter().map(|&(i, j, c)| ((i, j), c)).collect();
        for (&(i, j), c) in &map {
            if map.get(&(j, i)) != Some(c) {
                return Err(Error::violation(
                    "modular polynomial symmetry",
                    format!(
                        "Φ_{}: coefficient of X^{i} Y^{j} differs from X^{j} Y^{i}",
                        self.ell
                    ),
                ));
            }
        }
        Ok(())
    }

    /// Degree `ℓ + 1` in each variable, with `X^{ℓ+1}` and `Y^{ℓ+1}` monic.
    pub fn check_degree(&self) -> Result<()> {
        let top = self.ell as u32 + 1;
        let max_x = self.terms.iter().map(|t| t.0).max().unwrap_or(0);
        let max_y = self.terms.iter().map(|t| t.1).max().unwrap_or(0);
        let monic = self.terms.contains(&(top, 0, "1"));
        if max_x != top || max_y != top || !monic {
            return Err(Error::violation(
                "modular polynomial degree",
                format!(
                    "Φ_{} does not have degree ℓ + 1 = {top} in each variable",
                    self.ell
                ),
            ));
        }
        Ok(())
    }

    /// `Φ_ℓ(X, Y) ≡ (X^ℓ - Y)(X - Y^ℓ) (mod ℓ)`.
    pub fn check_kronecker_congruence(&self) -> Result<()> {
        let l = self.ell as u32;
        let m = self.ell;
        let mut expected = BTreeMap::new();
        // X^{ℓ+1} - X^ℓ Y^ℓ - X Y + Y^{ℓ+1}
        expected.insert((l + 1, 0), 1);
        expected.insert((0, l + 1), 1);
        expected.insert((l, l), m - 1);
        expected.insert((1, 1), m - 1);
        let got = self.reduce(m);
        if got != expected {
            return Err(Error::violation(
                "Kronecker congruence",
                format!(
                    "Φ_{} is not ≡ (X^ℓ - Y)(X - Y^ℓ) mod {}",
                    self.ell, self.ell
                ),
            ));
        }
        Ok(())
    }

    /// Run every structural self-check.
    pub fn self_check(&self) -> Result<()> {
        self.check_symmetry()?;
        self.check_degree()?;
        self.check_kronecker_congruence()
    }

    /// Reduce modulo the field characteristic for repeated specialization.
    pub fn over(&self, field: Fp2Field) -> ReducedModularPolynomial {
        let top = self.ell as usize + 1;
        let mut coeffs = vec![vec![0u64; top + 1]; top + 1];
        for ((i, j), v) in self.reduce(field.p()) {
            coeffs[i as usize][j as usize] = v;
        }
        ReducedModularPolynomial {
            ell: self.ell,
            field,
            coeffs,
        }
    }
}

/// `Φ_ℓ` with coefficients in `F_p`, ready to be specialized at `X = j`.
#[derive(Clone, Debug)]
pub struct ReducedModularPolynomial {
    ell: u64,
    field: Fp2Field,
    coeffs: Vec<Vec<u64>>,
}

impl ReducedModularPolynomial {
    pub fn ell(&self) -> u64 {
        self.ell
    }

    pub fn field(&self) -> &Fp2Field {
        &self.field
    }

    /// `Φ_ℓ(j, Y)` as a polynomial in `Y`.
    pub fn specialize(&self, j: Fp2) -> PolyFp2 {
        let f = &self.field;
        let top = self.coeffs.len();
        let mut powers = Vec::with_capacity(top);
        let mut acc = Fp2::ONE;
        for _ in 0..top {
            powers.push(acc);
            acc = f.mul(acc, j);
        }
        let ys = (0..top)
            .map(|jy| {
                (0..top).fold(Fp2::ZERO, |s, ix| {
                    let c = self.coeffs[ix][jy];
                    if c == 0 {
                        s
                    } else {
                        f.add(s, f.scale(powers[ix], c))
                    }
                })
            })
            .collect();
        PolyFp2::new(ys)
    }
}
