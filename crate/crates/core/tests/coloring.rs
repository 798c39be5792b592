use cbc_lab::coloring::{
    adj_set, available, bbc_number, brute_force, cbc_number, cbc_number_with_witness, chromatic_number, solve_k,
    verify, verify_linear, CircularColoring, ColorSet, Mode, Verdict, ViolationReason,
};
use cbc_lab::graph::named;
use cbc_lab::{BackbonePair, Error, Graph};
use proptest::prelude::*;

#[test]
fn verifier_reports_first_violation() {
    let p = BackbonePair::new(Graph::path(3), &[(0, 1)]).unwrap();
    let ok = CircularColoring::total(2, 5, vec![1, 3, 1]);
    assert_eq!(verify(&p, &ok).unwrap(), Verdict::Valid);
    let close = CircularColoring::total(2, 5, vec![1, 2, 1]);
    assert_eq!(
        verify(&p, &close).unwrap(),
        Verdict::Violation { edge: (0, 1), reason: ViolationReason::BackboneTooClose }
    );
    // 1 and 5 are circularly adjacent in [5] but far apart linearly
    let wrap = CircularColoring::total(2, 5, vec![1, 5, 1]);
    assert_eq!(
        verify(&p, &wrap).unwrap(),
        Verdict::Violation { edge: (0, 1), reason: ViolationReason::BackboneTooFar }
    );
    assert!(verify_linear(&p, &wrap).unwrap().is_valid());
    let improper = CircularColoring::total(2, 5, vec![1, 3, 3]);
    assert_eq!(verify(&p, &improper).unwrap(), Verdict::Violation { edge: (1, 2), reason: ViolationReason::Improper });
}

#[test]
fn verifier_input_errors() {
    let p = BackbonePair::full(Graph::path(2));
    assert!(matches!(verify(&p, &CircularColoring::total(2, 5, vec![1])), Err(Error::ColoringLength { .. })));
    assert!(matches!(
        verify(&p, &CircularColoring::total(2, 5, vec![1, 9])),
        Err(Error::ColorOutOfRange { color: 9, k: 5 })
    ));
    assert!(matches!(verify(&p, &CircularColoring::empty(2, 5, 2)), Err(Error::PartialColoring(0))));
    assert!(matches!(solve_k(&p, 0, 5), Err(Error::InvalidDistance(0))));
    assert!(matches!(solve_k(&p, 2, 64), Err(Error::UnsupportedColorCount(64))));
}

#[test]
fn available_colors() {
    let p = BackbonePair::new(Graph::path(3), &[(0, 1)]).unwrap();
    let mut partial = CircularColoring::empty(2, 6, 3);
    partial.colors[0] = Some(1);
    partial.colors[2] = Some(4);
    assert_eq!(available(&p, &partial, 1).unwrap(), ColorSet::from_colors([3, 5]));
    assert!(matches!(available(&p, &partial, 0), Err(Error::AlreadyColored(0))));
    assert_eq!(adj_set(1, 7), ColorSet::from_colors([7, 1, 2]));
}

#[test]
fn known_numbers() {
    assert_eq!(cbc_number(&BackbonePair::full(Graph::cycle(5)), 2).unwrap(), 5);
    assert_eq!(cbc_number(&BackbonePair::full(Graph::cycle(6)), 2).unwrap(), 4);
    assert_eq!(cbc_number(&BackbonePair::full(Graph::complete(2)), 2).unwrap(), 4);
    assert_eq!(cbc_number(&BackbonePair::plain(named::petersen()), 2).unwrap(), 3);
    assert_eq!(chromatic_number(&named::k(5)), 5);
    let (bbc, w) = bbc_number(&BackbonePair::full(Graph::complete(2)), 2).unwrap();
    assert_eq!(bbc, 3);
    assert!(verify_linear(&BackbonePair::full(Graph::complete(2)), &w).unwrap().is_valid());
    let (k, w) = cbc_number_with_witness(&BackbonePair::new(named::cube(), &[(0, 1), (2, 3)]).unwrap(), 2).unwrap();
    assert_eq!(w.k, k);
}

fn arb_pair(max_n: usize) -> impl Strategy<Value = BackbonePair> {
    (1usize..=max_n).prop_flat_map(|n| {
        let pairs: Vec<(usize, usize)> = (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v))).collect();
        let m = pairs.len();
        proptest::collection::vec(0u8..3, m).prop_map(move |pick| {
            let edges: Vec<_> = pairs.iter().zip(&pick).filter(|x| *x.1 > 0).map(|x| *x.0).collect();
            let bb: Vec<_> = pairs.iter().zip(&pick).filter(|x| *x.1 == 2).map(|x| *x.0).collect();
            BackbonePair::new(Graph::new(n, &edges).unwrap(), &bb).unwrap()
        })
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(96))]

    #[test]
    fn solver_agrees_with_brute_force(p in arb_pair(6), q in 1u32..4, k in 1u32..10) {
        let fast = solve_k(&p, q, k).unwrap();
        let slow = brute_force(&p, q, k, Mode::Circular).unwrap();
        prop_assert_eq!(fast.is_some(), slow.is_some());
        if let Some(c) = fast {
            prop_assert!(verify(&p, &c).unwrap().is_valid());
        }
    }

    #[test]
    fn number_is_monotone_threshold(p in arb_pair(7)) {
        let k = cbc_number(&p, 2).unwrap();
        prop_assert!(k == 1 || solve_k(&p, 2, k - 1).unwrap().is_none());
        // raising k only relaxes the upper distance bound
        for extra in 0..3 {
            prop_assert!(solve_k(&p, 2, k + extra).unwrap().is_some());
        }
        let (bbc, _) = bbc_number(&p, 2).unwrap();
        prop_assert!(bbc <= k && k <= bbc + 1);
    }

    #[test]
    fn relabeling_preserves_number(p in arb_pair(7), seed in any::<u64>()) {
        use rand::seq::SliceRandom;
        use rand::SeedableRng;
        let mut perm: Vec<usize> = (0..p.n()).collect();
        perm.shuffle(&mut rand_chacha::ChaCha8Rng::seed_from_u64(seed));
        prop_assert_eq!(cbc_number(&p, 2).unwrap(), cbc_number(&p.relabel(&perm), 2).unwrap());
    }
}
