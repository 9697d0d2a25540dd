//! Graph-derived Brandt traces against the class-number trace formula.

use ssig_core::analytics::{edit_distance, graph_stats, intersection_number};
use ssig_core::brandt::trace_formula;
use ssig_core::ssgraph::build_graph;

const PRIMES: [u64; 5] = [109, 193, 433, 1009, 2689];

#[test]
fn traces_agree_with_formula() {
    for p in PRIMES {
        let g2 = build_graph(p, 2, 0).unwrap();
        let g3 = build_graph(p, 3, 0).unwrap();
        let n = g2.n() as i64;
        assert_eq!(trace_formula(p, 1).unwrap(), n, "Tr B(1) at p = {p}");
        for g in [&g2, &g3] {
            let l = g.ell();
            let b = g.brandt();
            assert_eq!(
                b.trace(),
                trace_formula(p, l).unwrap(),
                "Tr B({l}) at p = {p}"
            );
            let b2 = b.prime_power(2).unwrap();
            assert_eq!(
                b2.trace(),
                trace_formula(p, l * l).unwrap(),
                "Tr B({}) at p = {p}",
                l * l
            );
        }
        let t6 = g2.brandt().coprime_product(&g3.brandt()).unwrap().trace();
        assert_eq!(t6, trace_formula(p, 6).unwrap(), "Tr B(6) at p = {p}");
    }
}

#[test]
fn p109_dossier() {
    let g2 = build_graph(109, 2, 0).unwrap();
    let g3 = build_graph(109, 3, 0).unwrap();
    let s2 = graph_stats(&g2).unwrap();
    let s3 = graph_stats(&g3).unwrap();
    assert_eq!((s2.loop_count, s2.redundant_edges), (1, 0));
    assert_eq!((s3.loop_count, s3.redundant_edges), (4, 3));
    assert_eq!(s3.trace_l2 - 9, 8);
    assert_eq!(s3.redundancy.loop_sites.get(&2), Some(&2));
    assert_eq!(s3.redundancy.edge_sites.get(&2), Some(&1));
    let common = intersection_number(&g2, &g3).unwrap();
    assert!(common <= 11);
    assert_eq!(edit_distance(&g2, &g3).unwrap(), 34 - 2 * common);
    assert_eq!(edit_distance(&g2, &g2).unwrap(), 0);
    assert_eq!(intersection_number(&g3, &g3).unwrap(), (9 * 4 + 4) / 2);
}
