//! Dense univariate polynomials over `F_{p^2}` and root finding.

use std::collections::BTreeMap;

use rand::Rng;

use super::fp2::{Fp2, Fp2Field};
use crate::error::{Error, Result};

/// Coefficients lowest degree first, never with trailing zeros.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PolyFp2 {
    coeffs: Vec<Fp2>,
}

impl PolyFp2 {
    pub fn new(mut coeffs: Vec<Fp2>) -> Self {
        while coeffs.last().is_some_and(Fp2::is_zero) {
            coeffs.pop();
        }
        PolyFp2 { coeffs }
    }

    pub fn zero() -> Self {
        PolyFp2 { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        PolyFp2 {
            coeffs: vec![Fp2::ONE],
        }
    }

    /// `Y - r`.
    pub fn linear(field: &Fp2Field, root: Fp2) -> Self {
        PolyFp2::new(vec![field.neg(root), Fp2::ONE])
    }

    /// `Y`.
    pub fn x() -> Self {
        PolyFp2::new(vec![Fp2::ZERO, Fp2::ONE])
    }

    pub fn coeffs(&self) -> &[Fp2] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree, `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> Option<Fp2> {
        self.coeffs.last().copied()
    }

    pub fn eval(&self, field: &Fp2Field, y: Fp2) -> Fp2 {
        self.coeffs
            .iter()
            .rev()
            .fold(Fp2::ZERO, |acc, &c| field.add(field.mul(acc, y), c))
    }

    pub fn add(&self, field: &Fp2Field, other: &Self) -> Self {
        let n = self.coeffs.len().max(other.coeffs.len());
        let get = |v: &[Fp2], i: usize| v.get(i).copied().unwrap_or(Fp2::ZERO);
        PolyFp2::new(
            (0..n)
                .map(|i| field.add(get(&self.coeffs, i), get(&other.coeffs, i)))
                .collect(),
        )
    }

    pub fn sub(&self, field: &Fp2Field, other: &Self) -> Self {
        let n = self.coeffs.len().max(other.coeffs.len());
        let get = |v: &[Fp2], i: usize| v.get(i).copied().unwrap_or(Fp2::ZERO);
        PolyFp2::new(
            (0..n)
                .map(|i| field.sub(get(&self.coeffs, i), get(&other.coeffs, i)))
                .collect(),
        )
    }

    pub fn mul(&self, field: &Fp2Field, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return PolyFp2::zero();
        }
        let mut out = vec![Fp2::ZERO; self.coeffs.len() + other.coeffs.len() - 1];
        for (i, &a) in self.coeffs.iter().enumerate() {
            for (j, &b) in other.coeffs.iter().enumerate() {
                out[i + j] = field.add(out[i + j], field.mul(a, b));
            }
        }
        PolyFp2::new(out)
    }

    /// Scale to a monic polynomial. The zero polynomial stays zero.
    pub fn monic(&self, field: &Fp2Field) -> Self {
        match self.leading() {
            None => PolyFp2::zero(),
            Some(lc) => {
                let inv = field.inv(lc).expect("leading coefficient is nonzero");
                PolyFp2::new(self.coeffs.iter().map(|&c| field.mul(c, inv)).collect())
            }
        }
    }

    /// Euclidean division `self = q * divisor + r` with `deg r < deg divisor`.
    pub fn div_rem(&self, field: &Fp2Field, divisor: &Self) -> Result<(Self, Self)> {
        let dlead = divisor
            .leading()
            .ok_or_else(|| Error::domain("polynomial division by zero"))?;
        let dinv = field.inv(dlead)?;
        let dd = divisor.coeffs.len() - 1;
        let mut rem = self.coeffs.clone();
        if rem.len() <= dd {
            return Ok((PolyFp2::zero(), self.clone()));
        }
        let mut quot = vec![Fp2::ZERO; rem.len() - dd];
        for k in (0..quot.len()).rev() {
            let coef = field.mul(rem[k + dd], dinv);
            quot[k] = coef;
            if coef.is_zero() {
                continue;
            }
            for (i, &d) in divisor.coeffs.iter().enumerate() {
                rem[k + i] = field.sub(rem[k + i], field.mul(coef, d));
            }
        }
        rem.truncate(dd);
        Ok((PolyFp2::new(quot), PolyFp2::new(rem)))
    }

    pub fn rem(&self, field: &Fp2Field, divisor: &Self) -> Result<Self> {
        Ok(self.div_rem(field, divisor)?.1)
    }

    /// Monic greatest common divisor.
    pub fn gcd(&self, field: &Fp2Field, other: &Self) -> Self {
        let (mut a, mut b) = (self.clone(), other.clone());
        while !b.is_zero() {
            let r = a.rem(field, &b).expect("b is nonzero");
            a = b;
            b = r;
        }
        a.monic(field)
    }

    /// `self^e mod modulus`.
    pub fn pow_mod(&self, field: &Fp2Field, mut e: u64, modulus: &Self) -> Result<Self> {
        let mut base = self.rem(field, modulus)?;
        let mut acc = PolyFp2::one().rem(field, modulus)?;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(field, &base).rem(field, modulus)?;
            }
            base = base.mul(field, &base).rem(field, modulus)?;
            e >>= 1;
        }
        Ok(acc)
    }
}

/// Roots of `f` lying in `F_{p^2}`, each with its multiplicity.
///
/// The rational radical `gcd(Y^{p^2} - Y, f)` is split into linear factors by
/// random equal-degree splitting (`gcd((Y + a)^{(p^2-1)/2} - 1, g)`), then each
/// multiplicity is read off by repeated exact division of `f`.
pub fn roots_with_multiplicity<R: Rng + ?Sized>(
    field: &Fp2Field,
    f: &PolyFp2,
    rng: &mut R,
) -> Result<BTreeMap<Fp2, u32>> {
    if f.is_zero() {
        return Err(Error::domain("roots of the zero polynomial are undefined"));
    }
    let f = f.monic(field);
    let mut out = BTreeMap::new();
    if f.degree() == Some(0) {
        return Ok(out);
    }
    let q = field.p() * field.p();
    let frob = PolyFp2::x().pow_mod(field, q, &f)?;
    let radical = frob.sub(field, &PolyFp2::x()).gcd(field, &f);

    let mut roots = Vec::new();
    split_linear(field, &radical, q, rng, &mut roots)?;

    for r in roots {
        let lin = PolyFp2::linear(field, r);
        let mut g = f.clone();
        let mut mult = 0u32;
        loop {
            let (quot, rem) = g.div_rem(field, &lin)?;
            if !rem.is_zero() {
                break;
            }
            mult += 1;
            g = quot;
        }
        debug_assert!(mult > 0);
        out.insert(r, mult);
    }
    Ok(out)
}

fn split_linear<R: Rng + ?Sized>(
    field: &Fp2Field,
    g: &PolyFp2,
    q: u64,
    rng: &mut R,
    roots: &mut Vec<Fp2>,
) -> Result<()> {
    match g.degree() {
        None | Some(0) => return Ok(()),
        Some(1) => {
            // g is monic: Y + g0
            roots.push(field.neg(g.coeffs()[0]));
            return Ok(());
        }
        _ => {}
    }
    let p = field.p();
    loop {
        let a = Fp2::new(rng.gen_range(0..p), rng.gen_range(0..p));
        let shifted = PolyFp2::new(vec![a, Fp2::ONE]);
        let h = shifted
            .pow_mod(field, (q - 1) / 2, g)?
            .sub(field, &PolyFp2::one());
        let d = h.gcd(field, g);
        let dd = d.degree().unwrap_or(0);
        if dd > 0 && dd < g.degree().unwrap() {
            let (other, _) = g.div_rem(field, &d)?;
            split_linear(field, &d, q, rng, roots)?;
            split_linear(field, &other.monic(field), q, rng, roots)?;
            return Ok(());
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn brute_force(field: &Fp2Field, f: &PolyFp2) -> BTreeMap<Fp2, u32> {
        let mut out = BTreeMap::new();
        for r in field.elements() {
            let mut g = f.clone();
            let mut m = 0;
            while !g.is_zero() && g.eval(field, r).is_zero() {
                m += 1;
                g = g.div_rem(field, &PolyFp2::linear(field, r)).unwrap().0;
            }
            if m > 0 {
                out.insert(r, m);
            }
        }
        out
    }

    #[test]
    fn cube_of_linear() {
        let field = Fp2Field::new(13).unwrap();
        let j0 = Fp2::new(5, 3);
        let lin = PolyFp2::linear(&field, j0);
        let f = lin.mul(&field, &lin).mul(&field, &lin);
        let mut rng = ChaCha8Rng::seed_from_u64(0);
        let roots = roots_with_multiplicity(&field, &f, &mut rng).unwrap();
        assert_eq!(roots.into_iter().collect::<Vec<_>>(), vec![(j0, 3)]);
    }

    #[test]
    fn square_roots_of_nonresidue() {
        let field = Fp2Field::new(13).unwrap();
        let c = field.from_int(field.nonresidue() as i64);
        let f = PolyFp2::new(vec![field.neg(c), Fp2::ZERO, Fp2::ONE]);
        let mut rng = ChaCha8Rng::seed_from_u64(0);
        let roots = roots_with_multiplicity(&field, &f, &mut rng).unwrap();
        let t = field.t();
        let mut expected = BTreeMap::new();
        expected.insert(t, 1);
        expected.insert(field.neg(t), 1);
        assert_eq!(roots, expected);
    }

    #[test]
    fn zero_polynomial_is_rejected() {
        let field = Fp2Field::new(13).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(0);
        assert!(roots_with_multiplicity(&field, &PolyFp2::zero(), &mut rng).is_err());
    }

    #[test]
    fn constant_has_no_roots() {
        let field = Fp2Field::new(13).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(0);
        let f = PolyFp2::new(vec![Fp2::new(4, 1)]);
        assert!(roots_with_multiplicity(&field, &f, &mut rng)
            .unwrap()
            .is_empty());
    }

    #[test]
    fn random_quintics_match_exhaustive_scan() {
        let field = Fp2Field::new(13).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(2024);
        for _ in 0..30 {
            let coeffs: Vec<Fp2> = (0..6)
                .map(|_| Fp2::new(rng.gen_range(0..13), rng.gen_range(0..13)))
                .collect();
            let f = PolyFp2::new(coeffs);
            if f.is_zero() {
                continue;
            }
            let got = roots_with_multiplicity(&field, &f, &mut rng).unwrap();
            assert_eq!(got, brute_force(&field, &f));
        }
    }

    #[test]
    fn planted_roots_are_recovered() {
        let field = Fp2Field::new(37).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for _ in 0..20 {
            let mut f = PolyFp2::new(vec![Fp2::new(rng.gen_range(1..37), 0)]);
            let mut planted = BTreeMap::new();
            for _ in 0..rng.gen_range(1..=5) {
                let r = Fp2::new(rng.gen_range(0..37), rng.gen_range(0..37));
                *planted.entry(r).or_insert(0) += 1;
                f = f.mul(&field, &PolyFp2::linear(&field, r));
            }
            let got = roots_with_multiplicity(&field, &f, &mut rng).unwrap();
            assert_eq!(got, planted);
        }
    }

    fn arb_elem() -> impl Strategy<Value = Fp2> {
        (0u64..101, 0u64..101).prop_map(|(a, b)| Fp2::new(a, b))
    }

    proptest! {
        #[test]
        fn field_axioms(a in arb_elem(), b in arb_elem(), c in arb_elem()) {
            let f = Fp2Field::new(101).unwrap();
            prop_assert_eq!(f.mul(f.mul(a, b), c), f.mul(a, f.mul(b, c)));
            prop_assert_eq!(f.add(f.add(a, b), c), f.add(a, f.add(b, c)));
            prop_assert_eq!(f.mul(a, f.add(b, c)), f.add(f.mul(a, b), f.mul(a, c)));
            prop_assert_eq!(f.mul(a, b), f.mul(b, a));
            if !a.is_zero() {
                prop_assert_eq!(f.mul(a, f.inv(a).unwrap()), Fp2::ONE);
            }
        }

        #[test]
        fn reported_roots_vanish(coeffs in proptest::collection::vec(arb_elem(), 2..8), seed in any::<u64>()) {
            let field = Fp2Field::new(101).unwrap();
            let f = PolyFp2::new(coeffs);
            prop_assume!(!f.is_zero());
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let roots = roots_with_multiplicity(&field, &f, &mut rng).unwrap();
            let total: u32 = roots.values().sum();
            prop_assert!(total as usize <= f.degree().unwrap());
            for (r, m) in &roots {
                prop_assert!(f.eval(&field, *r).is_zero());
                prop_assert!(*m >= 1);
            }
        }
    }
}
