//! Congruence classes of primes with loop-free, multi-edge-free or
//! edge-disjoint isogeny graphs.
//!
//! Each property is equivalent to `p` splitting in a finite list of imaginary
//! quadratic orders, i.e. to `(d/p) = +1` for every discriminant `d` in the
//! list. Since `(d/·)` agrees with `(d_fund/·)` on primes not dividing the
//! conductor, and `(d_fund/·)` is periodic modulo `|d_fund|`, the admissible
//! primes form a union of residue classes. [`find_first_prime`] answers the
//! same question with exact Brandt traces and covers the small primes the
//! residue classes do not speak for.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::str::FromStr;

use num_integer::{gcd, lcm};
use serde::{Deserialize, Serialize};

use crate::arith::{divisors, is_prime, kronecker};
use crate::brandt::trace_formula;
use crate::classnum::decompose;
use crate::error::{Error, Result};

/// Default upper limit for [`find_first_prime`].
pub const DEFAULT_SEARCH_CAP: u64 = 1_000_000;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum PropertyKind {
    NoLoops,
    NoMultiEdges,
    /// No loops and no multi-edges.
    Simple,
    /// The ℓ1- and ℓ2-graphs share no edge.
    NoCommonEdges,
}

impl FromStr for PropertyKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "no-loops" => Ok(PropertyKind::NoLoops),
            "no-multi-edges" => Ok(PropertyKind::NoMultiEdges),
            "simple" => Ok(PropertyKind::Simple),
            "no-common-edges" => Ok(PropertyKind::NoCommonEdges),
            _ => Err(Error::Parse(format!(
                "unknown property {s:?} (no-loops, no-multi-edges, simple, no-common-edges)"
            ))),
        }
    }
}

impl fmt::Display for PropertyKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            PropertyKind::NoLoops => "no-loops",
            PropertyKind::NoMultiEdges => "no-multi-edges",
            PropertyKind::Simple => "simple",
            PropertyKind::NoCommonEdges => "no-common-edges",
        })
    }
}

/// A graph property of `Λ_p(ℓ)` (or of the pair `Λ_p(ℓ1)`, `Λ_p(ℓ2)`).
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GraphProperty {
    kind: PropertyKind,
    ells: Vec<u64>,
    undirected: bool,
}

impl GraphProperty {
    /// Validates the degree list: one prime for single-graph properties, two
    /// distinct primes for [`PropertyKind::NoCommonEdges`].
    pub fn new(kind: PropertyKind, ells: Vec<u64>, undirected: bool) -> Result<Self> {
        if let Some(&bad) = ells.iter().find(|&&l| !is_prime(l)) {
            return Err(Error::domain(format!("ℓ = {bad} is not prime")));
        }
        let want = if kind == PropertyKind::NoCommonEdges {
            2
        } else {
            1
        };
        if ells.len() != want {
            return Err(Error::domain(format!(
                "property {kind} takes {want} value(s) of ℓ, got {}",
                ells.len()
            )));
        }
        if want == 2 && ells[0] == ells[1] {
            return Err(Error::domain("ℓ1 and ℓ2 must be distinct"));
        }
        Ok(GraphProperty {
            kind,
            ells,
            undirected,
        })
    }

    pub fn single(kind: PropertyKind, ell: u64, undirected: bool) -> Result<Self> {
        Self::new(kind, vec![ell], undirected)
    }

    pub fn kind(&self) -> PropertyKind {
        self.kind
    }

    pub fn ells(&self) -> &[u64] {
        &self.ells
    }

    pub fn undirected(&self) -> bool {
        self.undirected
    }

    /// Exact trace test for a prime `p >= 5` not equal to any ℓ, ignoring the
    /// residue restriction.
    pub fn holds_by_trace(&self, p: u64) -> Result<bool> {
        let l = self.ells[0];
        let loops = || trace_formula(p, l).map(|t| t == 0);
        let no_multi = || -> Result<bool> { Ok(trace_formula(p, l * l)? == trace_formula(p, 1)?) };
        Ok(match self.kind {
            PropertyKind::NoLoops => loops()?,
            PropertyKind::NoMultiEdges => no_multi()?,
            PropertyKind::Simple => loops()? && no_multi()?,
            PropertyKind::NoCommonEdges => trace_formula(p, l * self.ells[1])? == 0,
        })
    }

    /// Trace test plus `p ≡ 1 mod 12` when undirected graphs are required.
    pub fn holds(&self, p: u64) -> Result<bool> {
        if self.undirected && p % 12 != 1 {
            return Ok(false);
        }
        self.holds_by_trace(p)
    }
}

fn no_loop_discriminants(l: i64) -> impl Iterator<Item = i64> {
    (0..)
        .map(|s: i64| s * s)
        .take_while(move |&s2| s2 <= 4 * l)
        .map(move |s2| s2 - 4 * l)
}

/// The negative discriminants `d` such that the property holds iff `p` splits
/// in every order of discriminant `d`.
pub fn discriminant_set(prop: &GraphProperty) -> Vec<i64> {
    let l = prop.ells[0] as i64;
    let set: BTreeSet<i64> = match prop.kind {
        PropertyKind::NoLoops => no_loop_discriminants(l).collect(),
        PropertyKind::NoMultiEdges => (1..2 * l).map(|s| s * s - 4 * l * l).collect(),
        PropertyKind::Simple => no_loop_discriminants(l)
            .chain((1..2 * l).map(|s| s * s - 4 * l * l))
            .collect(),
        PropertyKind::NoCommonEdges => {
            let m = l * prop.ells[1] as i64;
            (0..)
                .map(|s: i64| s * s)
                .take_while(|&s2| s2 < 4 * m)
                .map(|s2| s2 - 4 * m)
                .collect()
        }
    };
    set.into_iter().collect()
}

/// A set of residue classes modulo `modulus`, all coprime to it.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CongruenceClassSet {
    pub modulus: u64,
    pub residues: Vec<u64>,
    /// Classes describe the property only for primes `p > valid_above` that
    /// do not divide `modulus`.
    pub valid_above: u64,
}

impl CongruenceClassSet {
    pub fn contains(&self, p: u64) -> bool {
        self.residues.binary_search(&(p % self.modulus)).is_ok()
    }

    /// Whether the classes speak for `p` at all.
    pub fn covers(&self, p: u64) -> bool {
        p > self.valid_above && gcd(p, self.modulus) == 1
    }

    /// Classes satisfying both sets, over the lcm of the moduli, then minimized.
    pub fn intersect(&self, other: &Self) -> Self {
        let m = lcm(self.modulus, other.modulus);
        let residues = (1..m)
            .filter(|&r| gcd(r, m) == 1 && self.contains(r) && other.contains(r))
            .collect();
        minimize(m, residues, self.valid_above.max(other.valid_above))
    }
}

impl fmt::Display for CongruenceClassSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let list: Vec<String> = self.residues.iter().map(u64::to_string).collect();
        write!(f, "p ≡ {} mod {}", list.join(", "), self.modulus)
    }
}

/// Replace `modulus` by its smallest divisor on which membership is constant
/// along the fibres of `(Z/M)^* → (Z/M')^*`.
fn minimize(modulus: u64, residues: BTreeSet<u64>, valid_above: u64) -> CongruenceClassSet {
    let units: Vec<u64> = (1..modulus.max(2))
        .filter(|&r| gcd(r, modulus) == 1)
        .collect();
    for m in divisors(modulus) {
        let mut class: BTreeMap<u64, bool> = BTreeMap::new();
        let consistent = units.iter().all(|&r| {
            let inside = residues.contains(&r);
            *class.entry(r % m).or_insert(inside) == inside
        });
        if consistent {
            let kept = class
                .into_iter()
                .filter(|&(_, v)| v)
                .map(|(r, _)| r)
                .collect();
            return CongruenceClassSet {
                modulus: m,
                residues: kept,
                valid_above,
            };
        }
    }
    unreachable!("the modulus itself is always consistent")
}

/// Residue classes of primes with the property, with minimal modulus.
pub fn derive_congruences(prop: &GraphProperty) -> CongruenceClassSet {
    let discs = discriminant_set(prop);
    let funds: Vec<i64> = discs
        .iter()
        .map(|&d| {
            decompose(d.unsigned_abs())
                .expect("s² - 4m is a discriminant")
                .d_fund
        })
        .collect();
    let mut modulus = funds.iter().fold(1u64, |acc, d| lcm(acc, d.unsigned_abs()));
    if prop.undirected {
        modulus = lcm(modulus, 12);
    }
    let residues: BTreeSet<u64> = (1..modulus.max(2))
        .filter(|&r| gcd(r, modulus) == 1)
        .filter(|&r| !prop.undirected || r % 12 == 1)
        .filter(|&r| funds.iter().all(|&d| kronecker(d, r) == 1))
        .collect();
    let valid_above = discs.iter().map(|d| d.unsigned_abs()).max().unwrap_or(0);
    minimize(modulus, residues, valid_above)
}

/// Congruence classes of a conjunction of properties.
pub fn derive_congruences_all(props: &[GraphProperty]) -> Result<CongruenceClassSet> {
    let (first, rest) = props
        .split_first()
        .ok_or_else(|| Error::domain("no property given"))?;
    Ok(rest.iter().fold(derive_congruences(first), |acc, p| {
        acc.intersect(&derive_congruences(p))
    }))
}

/// Smallest prime `p` in `[start, cap]` with every property, decided by traces.
pub fn find_first_prime(props: &[GraphProperty], start: u64, cap: u64) -> Result<u64> {
    if props.is_empty() {
        return Err(Error::domain("no property given"));
    }
    if start < 5 {
        return Err(Error::domain(format!("start = {start} must be at least 5")));
    }
    let excluded: BTreeSet<u64> = props.iter().flat_map(|p| p.ells.iter().copied()).collect();
    for p in start..=cap {
        if excluded.contains(&p) || !is_prime(p) {
            continue;
        }
        let mut all = true;
        for prop in props {
            if !prop.holds(p)? {
                all = false;
                break;
            }
        }
        if all {
            return Ok(p);
        }
    }
    Err(Error::NotFound(format!(
        "no prime in [{start}, {cap}] has the property"
    )))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn prop(kind: PropertyKind, ell: u64) -> GraphProperty {
        GraphProperty::single(kind, ell, true).unwrap()
    }

    #[test]
    fn discriminant_sets() {
        assert_eq!(
            discriminant_set(&prop(PropertyKind::NoLoops, 2)),
            vec![-8, -7, -4]
        );
        assert_eq!(
            discriminant_set(&prop(PropertyKind::NoMultiEdges, 3)),
            vec![-35, -32, -27, -20, -11]
        );
        let common = GraphProperty::new(PropertyKind::NoCommonEdges, vec![2, 3], true).unwrap();
        assert_eq!(discriminant_set(&common), vec![-24, -23, -20, -15, -8]);
    }

    #[test]
    fn property_validation() {
        assert!(GraphProperty::new(PropertyKind::NoLoops, vec![4], true).is_err());
        assert!(GraphProperty::new(PropertyKind::NoLoops, vec![2, 3], true).is_err());
        assert!(GraphProperty::new(PropertyKind::NoCommonEdges, vec![3, 3], true).is_err());
        assert!(GraphProperty::new(PropertyKind::NoCommonEdges, vec![2], true).is_err());
    }

    #[test]
    fn minimize_collapses_redundant_factor() {
        // every unit mod 24 that is 1 mod 3, expressed first mod 24
        let set = (1..24u64)
            .filter(|&r| gcd(r, 24) == 1 && r % 3 == 1)
            .collect();
        let got = minimize(24, set, 0);
        assert_eq!(got.modulus, 3);
        assert_eq!(got.residues, vec![1]);
    }

    #[test]
    fn no_loops_two_mod_168() {
        let set = derive_congruences(&prop(PropertyKind::NoLoops, 2));
        assert_eq!(set.modulus, 168);
        assert_eq!(set.residues, vec![1, 25, 121]);
    }

    #[test]
    fn fundamental_part_gives_same_symbol_on_primes() {
        let primes: Vec<u64> = (5u64..).filter(|&p| is_prime(p)).take(500).collect();
        for big_d in (3u64..400).filter(|d| d % 4 == 0 || d % 4 == 3) {
            let dec = decompose(big_d).unwrap();
            for &p in &primes {
                if !dec.conductor.is_multiple_of(p) {
                    assert_eq!(
                        kronecker(-(big_d as i64), p),
                        kronecker(dec.d_fund, p),
                        "D = {big_d}, p = {p}"
                    );
                }
            }
        }
    }

    #[test]
    fn first_primes_small() {
        assert_eq!(
            find_first_prime(&[prop(PropertyKind::NoLoops, 3)], 5, 10_000).unwrap(),
            97
        );
        let directed = GraphProperty::single(PropertyKind::NoLoops, 2, false).unwrap();
        assert_eq!(find_first_prime(&[directed], 5, 10_000).unwrap(), 113);
        assert!(find_first_prime(&[prop(PropertyKind::Simple, 2)], 5, 500).is_err());
        assert!(find_first_prime(&[prop(PropertyKind::Simple, 2)], 3, 500).is_err());
    }
}
