//! Residue-class descriptions against exact trace predicates.

use ssig_core::arith::is_prime;
use ssig_core::congruence::{
    derive_congruences, derive_congruences_all, discriminant_set, find_first_prime, GraphProperty,
    PropertyKind,
};

fn undirected(kind: PropertyKind, ells: &[u64]) -> GraphProperty {
    GraphProperty::new(kind, ells.to_vec(), true).unwrap()
}

const MOD_9240: [u64; 30] = [
    1, 169, 289, 361, 529, 841, 961, 1369, 1681, 1849, 2209, 2641, 2689, 2809, 3481, 3529, 3721,
    4321, 4489, 5041, 5329, 5569, 6169, 6241, 6889, 7561, 7681, 7921, 8089, 8761,
];

const MOD_2760: [u64; 22] = [
    1, 49, 121, 169, 289, 361, 409, 601, 721, 841, 961, 1129, 1369, 1681, 1729, 1849, 1921, 2209,
    2281, 2329, 2401, 2569,
];

#[test]
fn published_lists() {
    let cases: Vec<(GraphProperty, u64, Vec<u64>)> = vec![
        (
            undirected(PropertyKind::NoLoops, &[2]),
            168,
            vec![1, 25, 121],
        ),
        (
            undirected(PropertyKind::NoLoops, &[3]),
            264,
            vec![1, 25, 49, 97, 169],
        ),
        (
            undirected(PropertyKind::NoMultiEdges, &[2]),
            420,
            vec![1, 109, 121, 169, 289, 361],
        ),
        (
            undirected(PropertyKind::Simple, &[2]),
            840,
            vec![1, 121, 169, 289, 361, 529],
        ),
        (
            undirected(PropertyKind::NoMultiEdges, &[3]),
            9240,
            MOD_9240.to_vec(),
        ),
        (
            undirected(PropertyKind::Simple, &[3]),
            9240,
            MOD_9240.to_vec(),
        ),
        (
            undirected(PropertyKind::NoCommonEdges, &[2, 3]),
            2760,
            MOD_2760.to_vec(),
        ),
    ];
    for (prop, modulus, residues) in cases {
        let got = derive_congruences(&prop);
        assert_eq!(
            (got.modulus, &got.residues),
            (modulus, &residues),
            "{prop:?}"
        );
    }
}

#[test]
fn classes_match_traces() {
    let props = [
        undirected(PropertyKind::NoLoops, &[2]),
        undirected(PropertyKind::NoLoops, &[3]),
        undirected(PropertyKind::NoMultiEdges, &[2]),
        undirected(PropertyKind::NoMultiEdges, &[3]),
        undirected(PropertyKind::Simple, &[2]),
        undirected(PropertyKind::Simple, &[3]),
        undirected(PropertyKind::NoCommonEdges, &[2, 3]),
        GraphProperty::new(PropertyKind::NoLoops, vec![2], false).unwrap(),
        GraphProperty::new(PropertyKind::NoCommonEdges, vec![2, 5], false).unwrap(),
    ];
    for prop in &props {
        let classes = derive_congruences(prop);
        let max_d = discriminant_set(prop)
            .iter()
            .map(|d| d.unsigned_abs())
            .max()
            .unwrap();
        let mut checked = 0;
        for p in (max_d..=5000).filter(|&p| is_prime(p) && classes.covers(p)) {
            if prop.undirected() && p % 12 != 1 {
                continue;
            }
            assert_eq!(
                classes.contains(p),
                prop.holds(p).unwrap(),
                "{prop:?} at p = {p}"
            );
            checked += 1;
        }
        assert!(checked > 20, "{prop:?}: only {checked} primes checked");
    }
}

#[test]
fn conjunction_classes() {
    let both = derive_congruences_all(&[
        undirected(PropertyKind::NoLoops, &[2]),
        undirected(PropertyKind::NoLoops, &[3]),
    ])
    .unwrap();
    assert!(both.contains(1873));
    let first = (29..)
        .find(|&p| is_prime(p) && both.covers(p) && both.contains(p))
        .unwrap();
    assert_eq!(first, 1873);
}

#[test]
fn no_multi_edges_for_three_implies_simple() {
    let multi3 = undirected(PropertyKind::NoMultiEdges, &[3]);
    let loops3 = undirected(PropertyKind::NoLoops, &[3]);
    let simple2 = undirected(PropertyKind::Simple, &[2]);
    for p in (13..5000).filter(|&p| p % 12 == 1 && is_prime(p)) {
        if multi3.holds(p).unwrap() {
            assert!(loops3.holds(p).unwrap(), "p = {p}");
            assert!(simple2.holds(p).unwrap(), "p = {p}");
        }
    }
}

#[test]
fn named_first_primes() {
    let cap = 1_000_000;
    let run = |props: &[GraphProperty]| find_first_prime(props, 5, cap).unwrap();
    assert_eq!(run(&[undirected(PropertyKind::NoLoops, &[3])]), 97);
    assert_eq!(run(&[undirected(PropertyKind::NoLoops, &[2])]), 193);
    assert_eq!(
        run(&[GraphProperty::new(PropertyKind::NoLoops, vec![2], false).unwrap()]),
        113
    );
    assert_eq!(run(&[undirected(PropertyKind::Simple, &[2])]), 1009);
    assert_eq!(
        run(&[
            undirected(PropertyKind::NoLoops, &[2]),
            undirected(PropertyKind::NoLoops, &[3])
        ]),
        1873
    );
    assert_eq!(
        run(&[
            undirected(PropertyKind::Simple, &[2]),
            undirected(PropertyKind::Simple, &[3])
        ]),
        2689
    );
}
