use cbc_lab::graph::named;
use cbc_lab::workbench::{
    canonical_code, canonical_form, canonical_pair_code, enumerate_graphs, hunt, hunt_lines, linear_forests,
    maximal_matchings, report_line, reverify, BackboneSpec, Filters, Generator, HuntConfig, HuntTarget,
};
use cbc_lab::{BackbonePair, Graph};
use proptest::prelude::*;

#[test]
fn enumeration_counts() {
    // connected planar graphs on 1..=6 vertices
    let f = Filters { connected: true, ..Filters::planar() };
    let counts: Vec<usize> = (1..=6).map(|n| enumerate_graphs(n, &f).unwrap().len()).collect();
    assert_eq!(counts, vec![1, 1, 2, 6, 20, 99]);
    // trees
    let trees = Filters { connected: true, c4_free: true, c5_free: true, ..Filters::default() };
    let t7 = enumerate_graphs(7, &trees).unwrap().into_iter().filter(|g| g.m() == 6).count();
    assert_eq!(t7, 11);
    assert!(enumerate_graphs(11, &Filters::default()).is_err());
}

#[test]
fn enumerated_graphs_are_canonical_and_distinct() {
    let gs = enumerate_graphs(6, &Filters::planar()).unwrap();
    let mut codes: Vec<_> = gs.iter().map(canonical_code).collect();
    codes.sort();
    codes.dedup();
    assert_eq!(codes.len(), gs.len());
}

#[test]
fn backbone_families() {
    // P4: {01, 23} and {12}
    assert_eq!(maximal_matchings(&Graph::path(4)).unwrap().len(), 2);
    assert!(maximal_matchings(&named::petersen()).unwrap().iter().filter(|m| m.len() == 5).count() == 6);
    assert_eq!(linear_forests(&Graph::path(3)).unwrap().len(), 4);
    let c6 = Graph::cycle(6);
    let a = BackbonePair::new(c6.clone(), &[(0, 1), (2, 3), (4, 5)]).unwrap();
    let b = BackbonePair::new(c6, &[(1, 2), (3, 4), (0, 5)]).unwrap();
    assert_eq!(canonical_pair_code(&a), canonical_pair_code(&b));
}

#[test]
fn hunts_find_no_violations() {
    for target in HuntTarget::ALL {
        let cfg = HuntConfig::new(target, Generator::Exhaustive { n_min: 1, n_max: 6 }, 1);
        let (records, s) = hunt(&cfg).unwrap();
        assert_eq!(s.instances, records.len());
        assert_eq!(s.violations, 0, "{target:?}");
        for r in &records {
            assert!(reverify(target, r).unwrap(), "{target:?} {}", r.id);
        }
    }
}

#[test]
fn given_graphs_and_report_lines() {
    let cfg = HuntConfig {
        backbones: BackboneSpec::AllMaximalMatchings,
        ..HuntConfig::new(HuntTarget::Thm2Bound, Generator::Given { graphs: vec![named::cube()] }, 0)
    };
    let (lines, s) = hunt_lines(&cfg).unwrap();
    assert_eq!(lines.len(), s.instances + 2);
    assert!(s.instances >= 1);
    let last: serde_json::Value = serde_json::from_str(lines.last().unwrap()).unwrap();
    assert_eq!(last["record"], "summary");
    let l: serde_json::Value = serde_json::from_str(&report_line("x", &serde_json::json!({"a": 1}))).unwrap();
    assert_eq!(l, serde_json::json!({"schema": 1, "record": "x", "a": 1}));
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn canonical_form_ignores_labels(n in 1usize..10, bits in any::<u64>(), seed in any::<u64>()) {
        use rand::seq::SliceRandom;
        use rand::SeedableRng;
        let pairs: Vec<(usize, usize)> = (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v))).collect();
        let edges: Vec<_> = pairs.iter().enumerate().filter(|(i, _)| bits >> (i % 64) & 1 == 1).map(|(_, e)| *e).collect();
        let g = Graph::new(n, &edges).unwrap();
        let mut perm: Vec<usize> = (0..n).collect();
        perm.shuffle(&mut rand_chacha::ChaCha8Rng::seed_from_u64(seed));
        let h = g.relabel(&perm);
        prop_assert_eq!(canonical_code(&g), canonical_code(&h));
        prop_assert_eq!(canonical_form(&g), canonical_form(&h));
    }
}
