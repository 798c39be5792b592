use cbc_lab::graph::named;
use cbc_lab::io::{format_backbone, from_graph6, parse_backbone, to_graph6};
use cbc_lab::{BackboneKind, BackbonePair, Error, Graph};
use proptest::prelude::*;

#[test]
fn build_and_attach() {
    let k3 = Graph::new(3, &[(0, 1), (1, 2), (0, 2)]).unwrap();
    assert_eq!(k3, Graph::complete(3));
    assert!(matches!(Graph::new(2, &[(0, 0)]), Err(Error::InvalidEdge(0, 0))));
    assert!(matches!(Graph::new(2, &[(0, 5)]), Err(Error::InvalidVertex { .. })));
    assert_eq!(Graph::complete(4).m(), 6);

    let c6 = BackbonePair::new(Graph::cycle(6), &[(0, 1), (3, 4)]).unwrap();
    let dh: Vec<usize> = (0..6).map(|v| c6.backbone_degree(v)).collect();
    assert_eq!(dh, vec![1, 1, 0, 1, 1, 0]);
    assert!(matches!(BackbonePair::new(Graph::cycle(6), &[(0, 3)]), Err(Error::BackboneNotSubgraph(0, 3))));
}

#[test]
fn kinds() {
    let k4 = BackbonePair::new(Graph::complete(4), &[(0, 1), (2, 3)]).unwrap();
    assert_eq!(k4.kind(), BackboneKind::Matching);
    let k3 = BackbonePair::new(Graph::complete(3), &[(0, 1), (1, 2)]).unwrap();
    assert_eq!(k3.kind(), BackboneKind::LinearForest);
    assert_eq!(BackbonePair::full(Graph::cycle(6)).kind(), BackboneKind::General);
    assert_eq!(BackbonePair::full(named::star(4)).kind(), BackboneKind::Tree);
}

#[test]
fn deficient_vertices() {
    let c6 = BackbonePair::new(Graph::cycle(6), &[(0, 1), (3, 4)]).unwrap();
    assert_eq!(c6.total_degree_deficient(5), (0..6).collect::<Vec<_>>());
    assert!(BackbonePair::plain(Graph::complete(6)).total_degree_deficient(5).is_empty());
    let cube = BackbonePair::new(named::cube(), &[(0, 1)]).unwrap();
    assert_eq!(cube.total_degree_deficient(6).len(), 8);
}

#[test]
fn file_formats_round_trip() {
    let p = named::petersen();
    assert_eq!(from_graph6(&to_graph6(&p)).unwrap(), p);
    let text = "# matching\n0 1\n\n2 3\n";
    assert_eq!(parse_backbone(text).unwrap(), vec![(0, 1), (2, 3)]);
    assert_eq!(parse_backbone(&format_backbone(&[(4, 5)])).unwrap(), vec![(4, 5)]);
    assert!(parse_backbone("0 1 2").is_err());
}

fn arb_pair() -> impl Strategy<Value = (BackbonePair, Vec<usize>)> {
    (1usize..10).prop_flat_map(|n| {
        let pairs: Vec<(usize, usize)> = (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v))).collect();
        let m = pairs.len();
        (proptest::collection::vec(0u8..3, m), Just(pairs), Just((0..n).collect::<Vec<_>>()).prop_shuffle()).prop_map(
            move |(pick, pairs, perm)| {
                let edges: Vec<_> = pairs.iter().zip(&pick).filter(|x| *x.1 > 0).map(|x| *x.0).collect();
                let bb: Vec<_> = pairs.iter().zip(&pick).filter(|x| *x.1 == 2).map(|x| *x.0).collect();
                (BackbonePair::new(Graph::new(n, &edges).unwrap(), &bb).unwrap(), perm)
            },
        )
    })
}

proptest! {
    #[test]
    fn degree_bookkeeping((p, perm) in arb_pair()) {
        let g = p.graph();
        prop_assert_eq!(g.degree_sum(), 2 * g.m());
        for v in 0..g.n() {
            prop_assert!(p.backbone_degree(v) <= p.degree(v));
        }
        prop_assert_eq!(p.relabel(&perm).kind(), p.kind());
        for k in 1..12 {
            let a = p.total_degree_deficient(k);
            let b = p.total_degree_deficient(k + 1);
            prop_assert!(a.iter().all(|v| b.contains(v)));
        }
    }

    #[test]
    fn graph6_round_trip((p, _) in arb_pair()) {
        prop_assert_eq!(&from_graph6(&to_graph6(p.graph())).unwrap(), p.graph());
    }
}
