//! Brandt matrices built from graph adjacency, and Brandt traces from
//! Hurwitz class numbers.
//!
//! The two routes are independent: [`BrandtMatrix::prime_power`] and
//! [`BrandtMatrix::coprime_product`] only multiply integer matrices, while
//! [`trace_formula`] only sums modified Hurwitz class numbers.

use serde::{Deserialize, Serialize};

use crate::arith::{divisors, is_prime, isqrt};
use crate::classnum::{hurwitz_modified, ExactRational};
use crate::error::{Error, Result};

/// Square nonnegative integer matrix `B(m)` for the prime `p`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BrandtMatrix {
    p: u64,
    degree: u64,
    n: usize,
    entries: Vec<i64>,
}

impl BrandtMatrix {
    /// `B(1)`, the `n × n` identity.
    pub fn identity(p: u64, n: usize) -> Self {
        let mut entries = vec![0; n * n];
        for i in 0..n {
            entries[i * n + i] = 1;
        }
        BrandtMatrix {
            p,
            degree: 1,
            n,
            entries,
        }
    }

    /// The zero matrix, standing in for `B(m)` when `m` is not a positive integer.
    pub fn zero(p: u64, n: usize) -> Self {
        BrandtMatrix {
            p,
            degree: 0,
            n,
            entries: vec![0; n * n],
        }
    }

    /// Wrap an adjacency matrix of `Λ_p(ℓ)` as `B(ℓ)`.
    pub fn from_adjacency(p: u64, degree: u64, rows: &[Vec<u32>]) -> Result<Self> {
        let n = rows.len();
        if rows.iter().any(|r| r.len() != n) {
            return Err(Error::domain("adjacency matrix is not square"));
        }
        let entries = rows.iter().flatten().map(|&x| x as i64).collect();
        Ok(BrandtMatrix {
            p,
            degree,
            n,
            entries,
        })
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn degree(&self) -> u64 {
        self.degree
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn get(&self, i: usize, j: usize) -> i64 {
        self.entries[i * self.n + j]
    }

    pub fn row(&self, i: usize) -> &[i64] {
        &self.entries[i * self.n..(i + 1) * self.n]
    }

    pub fn trace(&self) -> i64 {
        (0..self.n).map(|i| self.get(i, i)).sum()
    }

    pub fn row_sums(&self) -> Vec<i64> {
        (0..self.n).map(|i| self.row(i).iter().sum()).collect()
    }

    pub fn is_symmetric(&self) -> bool {
        (0..self.n).all(|i| (0..i).all(|j| self.get(i, j) == self.get(j, i)))
    }

    pub fn is_identity(&self) -> bool {
        (0..self.n).all(|i| (0..self.n).all(|j| self.get(i, j) == (i == j) as i64))
    }

    fn same_shape(&self, other: &Self) -> Result<()> {
        if self.p != other.p || self.n != other.n {
            return Err(Error::domain(format!(
                "Brandt matrices for different primes or sizes: (p={}, n={}) vs (p={}, n={})",
                self.p, self.n, other.p, other.n
            )));
        }
        Ok(())
    }

    fn checked_matmul(&self, other: &Self) -> Result<Vec<i64>> {
        let n = self.n;
        let mut out = vec![0i64; n * n];
        for i in 0..n {
            for k in 0..n {
                let a = self.get(i, k);
                if a == 0 {
                    continue;
                }
                for j in 0..n {
                    let prod = a
                        .checked_mul(other.get(k, j))
                        .and_then(|x| x.checked_add(out[i * n + j]))
                        .ok_or_else(|| Error::Overflow("Brandt matrix product".into()))?;
                    out[i * n + j] = prod;
                }
            }
        }
        Ok(out)
    }

    /// `B(m) B(m') = B(m m')` for coprime degrees.
    pub fn coprime_product(&self, other: &Self) -> Result<Self> {
        self.same_shape(other)?;
        if num_integer::gcd(self.degree, other.degree) != 1 {
            return Err(Error::domain(format!(
                "degrees {} and {} are not coprime",
                self.degree, other.degree
            )));
        }
        let degree = self
            .degree
            .checked_mul(other.degree)
            .ok_or_else(|| Error::Overflow("Brandt degree".into()))?;
        Ok(BrandtMatrix {
            p: self.p,
            degree,
            n: self.n,
            entries: self.checked_matmul(other)?,
        })
    }

    /// `Tr(A B) = Σ_{i,j} A_ij B_ji` without forming the product.
    pub fn trace_of_product(&self, other: &Self) -> Result<i64> {
        self.same_shape(other)?;
        let mut acc = 0i64;
        for i in 0..self.n {
            for j in 0..self.n {
                acc = self
                    .get(i, j)
                    .checked_mul(other.get(j, i))
                    .and_then(|x| x.checked_add(acc))
                    .ok_or_else(|| Error::Overflow("trace of product".into()))?;
            }
        }
        Ok(acc)
    }

    /// `B(ℓ^k)` from `B(ℓ)` via `B(ℓ^k) = B(ℓ^{k-1}) B(ℓ) - ℓ B(ℓ^{k-2})`.
    pub fn prime_power(&self, k: u32) -> Result<Self> {
        Ok(self
            .prime_power_sequence(k)?
            .pop()
            .expect("sequence is nonempty"))
    }

    /// `[B(1), B(ℓ), ..., B(ℓ^k)]`.
    pub fn prime_power_sequence(&self, k: u32) -> Result<Vec<Self>> {
        let ell = self.degree;
        if !is_prime(ell) {
            return Err(Error::domain(format!("base degree {ell} is not prime")));
        }
        if ell == self.p {
            return Err(Error::domain(format!(
                "the prime-power recurrence requires ℓ ≠ p (got ℓ = p = {ell})"
            )));
        }
        let mut seq = vec![BrandtMatrix::identity(self.p, self.n)];
        if k >= 1 {
            seq.push(self.clone());
        }
        for e in 2..=k {
            let prev = &seq[e as usize - 1];
            let prev2 = &seq[e as usize - 2];
            let mut entries = prev.checked_matmul(self)?;
            for (x, &y) in entries.iter_mut().zip(&prev2.entries) {
                *x = (ell as i64)
                    .checked_mul(y)
                    .and_then(|s| x.checked_sub(s))
                    .ok_or_else(|| Error::Overflow("prime-power recurrence".into()))?;
            }
            let degree = ell
                .checked_pow(e)
                .ok_or_else(|| Error::Overflow("Brandt degree".into()))?;
            seq.push(BrandtMatrix {
                p: self.p,
                degree,
                n: self.n,
                entries,
            });
        }
        Ok(seq)
    }

    /// `self - other`, entrywise.
    pub fn difference(&self, other: &Self) -> Result<Vec<i64>> {
        self.same_shape(other)?;
        Ok(self
            .entries
            .iter()
            .zip(&other.entries)
            .map(|(a, b)| a - b)
            .collect())
    }

    /// Checks row sums equal `σ'(m)` and, for `p ≡ 1 (mod 12)`, symmetry.
    pub fn check_invariants(&self) -> Result<()> {
        let expected = sigma_prime(self.degree, self.p) as i64;
        if let Some((i, s)) = self
            .row_sums()
            .into_iter()
            .enumerate()
            .find(|&(_, s)| s != expected)
        {
            return Err(Error::violation(
                "Brandt row sums",
                format!(
                    "row {i} of B({}) sums to {s}, expected σ'({}) = {expected}",
                    self.degree, self.degree
                ),
            ));
        }
        if self.p % 12 == 1 && !self.is_symmetric() {
            return Err(Error::violation(
                "Brandt symmetry",
                format!("B({}) is not symmetric although p ≡ 1 mod 12", self.degree),
            ));
        }
        if self.degree == 1 && !self.is_identity() {
            return Err(Error::violation("B(1) = I", "B(1) is not the identity"));
        }
        Ok(())
    }
}

/// `σ'(m) = Σ_{d | m, p ∤ d} d`.
pub fn sigma_prime(m: u64, p: u64) -> u64 {
    divisors(m).into_iter().filter(|d| d % p != 0).sum()
}

/// `Σ_{s^2 <= 4m} H_p(4m - s^2)` as an exact rational.
pub fn trace_formula_exact(p: u64, m: u64) -> Result<ExactRational> {
    if p < 5 || !is_prime(p) {
        return Err(Error::domain(format!("p = {p} must be a prime >= 5")));
    }
    if m == 0 {
        return Err(Error::domain("trace formula needs m >= 1"));
    }
    if m.is_multiple_of(p) {
        return Err(Error::domain(format!("m = {m} is divisible by p = {p}")));
    }
    let four_m = m
        .checked_mul(4)
        .ok_or_else(|| Error::Overflow("4m".into()))?;
    let s_max = isqrt(four_m);
    let mut total = hurwitz_modified(four_m, p)?;
    for s in 1..=s_max {
        let h = hurwitz_modified(four_m - s * s, p)?;
        total += h + h;
    }
    Ok(total)
}

/// `Tr B(m)` via modified Hurwitz class numbers.
///
/// A non-integral or negative sum is reported as a theorem violation.
pub fn trace_formula(p: u64, m: u64) -> Result<i64> {
    let exact = trace_formula_exact(p, m)?;
    match exact.to_integer() {
        Some(v) if v >= 0 => Ok(v),
        _ => Err(Error::violation(
            "Brandt trace formula",
            format!("Σ H_p(4m - s²) = {exact} for p = {p}, m = {m} is not a nonnegative integer"),
        )),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sample(p: u64) -> BrandtMatrix {
        // 2x2 symmetric toy matrix with row sums 3: a degree-2 "Brandt-like" matrix.
        BrandtMatrix::from_adjacency(p, 2, &[vec![1, 2], vec![2, 1]]).unwrap()
    }

    #[test]
    fn power_zero_and_one() {
        let b = sample(109);
        assert!(b.prime_power(0).unwrap().is_identity());
        assert_eq!(b.prime_power(1).unwrap(), b);
    }

    #[test]
    fn recurrence_by_hand() {
        let b = sample(109);
        let b2 = b.prime_power(2).unwrap();
        // B^2 - 2I = [[5,4],[4,5]] - [[2,0],[0,2]]
        assert_eq!(b2.row(0), &[3, 4]);
        assert_eq!(b2.row(1), &[4, 3]);
        assert_eq!(b2.degree(), 4);
    }

    #[test]
    fn rejects_ell_equal_p_and_composite_base() {
        let b = BrandtMatrix::from_adjacency(2, 2, &[vec![3]]).unwrap();
        assert!(b.prime_power(2).is_err());
        let c = BrandtMatrix::from_adjacency(109, 4, &[vec![3]]).unwrap();
        assert!(c.prime_power(2).is_err());
    }

    #[test]
    fn coprime_product_checks() {
        let b = sample(109);
        let i = BrandtMatrix::identity(109, 2);
        assert_eq!(b.coprime_product(&i).unwrap().row(0), b.row(0));
        assert!(b.coprime_product(&b).is_err());
        let other = BrandtMatrix::identity(113, 2);
        assert!(b.coprime_product(&other).is_err());
    }

    #[test]
    fn sigma_prime_skips_multiples_of_p() {
        assert_eq!(sigma_prime(6, 109), 12);
        assert_eq!(sigma_prime(9, 109), 13);
        assert_eq!(sigma_prime(10, 5), 3);
        assert_eq!(sigma_prime(1, 5), 1);
    }

    #[test]
    fn trace_formula_examples() {
        assert_eq!(trace_formula(109, 1).unwrap(), 9);
        assert_eq!(trace_formula(109, 3).unwrap(), 4);
        assert_eq!(trace_formula(193, 2).unwrap(), 0);
        assert_eq!(trace_formula(109, 9).unwrap(), 17);
    }

    #[test]
    fn trace_formula_six_matches_hand_sum() {
        // H_p(24) + 2 H_p(23) + 2 H_p(20) + 2 H_p(15) + 2 H_p(8), the s = ±1..±4 terms.
        let hp = |d| hurwitz_modified(d, 109).unwrap();
        let two = ExactRational::from_int(2);
        let hand = hp(24) + two * (hp(23) + hp(20) + hp(15) + hp(8));
        assert_eq!(hand, ExactRational::from_int(10));
        assert_eq!(trace_formula(109, 6).unwrap(), 10);
    }

    #[test]
    fn trace_of_identity_is_vertex_count() {
        // n from the vertex-count formula: floor(p/12) + {0,1,1,2}
        for p in [5u64, 7, 11, 13, 17, 19, 23, 109, 113, 1009] {
            let extra = match p % 12 {
                1 => 0,
                5 | 7 => 1,
                _ => 2,
            };
            assert_eq!(
                trace_formula(p, 1).unwrap(),
                (p / 12 + extra) as i64,
                "p = {p}"
            );
        }
    }

    #[test]
    fn trace_formula_domain() {
        assert!(trace_formula(3, 2).is_err());
        assert!(trace_formula(109, 0).is_err());
        assert!(trace_formula(109, 218).is_err());
    }
}
