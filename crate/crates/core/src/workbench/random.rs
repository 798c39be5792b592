//! Seeded random instances: planar graphs by edge insertion and backbones.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::Filters;
use crate::graph::{ordered, BackbonePair, Edge, Graph, UnionFind};
use crate::{Error, Result};

/// A planar graph on `n` vertices with `m` edges, grown by inserting edges
/// in random order and rejecting any that break a filter. When
/// `filters.connected` is set a random spanning tree comes first. Each of
/// `retries` attempts uses fresh randomness from the same seeded stream.
pub fn random_planar(n: usize, m: usize, filters: &Filters, seed: u64, retries: usize) -> Result<Graph> {
    let cap = if n >= 3 { 3 * n - 6 } else { n * n.saturating_sub(1) / 2 };
    if m > cap || (filters.connected && n > 0 && m < n - 1) {
        return Err(Error::GiveUp(0));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..retries.max(1) {
        if let Some(g) = attempt(n, m, filters, &mut rng) {
            return Ok(g);
        }
    }
    Err(Error::GiveUp(retries.max(1)))
}

fn attempt(n: usize, m: usize, filters: &Filters, rng: &mut ChaCha8Rng) -> Option<Graph> {
    let mut g = Graph::empty(n);
    if filters.connected {
        let mut order: Vec<usize> = (0..n).collect();
        order.shuffle(rng);
        for i in 1..n {
            let parent = order[rng.gen_range(0..i)];
            g = g.with_edge(parent, order[i]);
        }
    }
    let mut candidates: Vec<Edge> =
        (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v))).filter(|&(u, v)| !g.has_edge(u, v)).collect();
    candidates.shuffle(rng);
    for (u, v) in candidates {
        if g.m() >= m {
            break;
        }
        let h = g.with_edge(u, v);
        if filters.hereditary_ok(&h) {
            g = h;
        }
    }
    (g.m() == m && filters.output_ok(&g)).then_some(g)
}

/// Backbone shapes that can be sampled.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, serde::Serialize, serde::Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SampleKind {
    Matching,
    LinearForest,
    SpanningTree,
    /// Every edge of the graph.
    Full,
    Empty,
}

/// A random backbone of the given shape: a maximal matching, a maximal
/// linear forest grown greedily from a random edge order, or a random
/// spanning tree.
pub fn sample_backbone(g: &Graph, kind: SampleKind, seed: u64) -> Result<BackbonePair> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut edges = g.edges().to_vec();
    edges.shuffle(&mut rng);
    let n = g.n();
    let chosen: Vec<Edge> = match kind {
        SampleKind::Full => g.edges().to_vec(),
        SampleKind::Empty => Vec::new(),
        SampleKind::Matching => {
            let mut used = vec![false; n];
            let mut out = Vec::new();
            for (u, v) in edges {
                if !used[u] && !used[v] {
                    used[u] = true;
                    used[v] = true;
                    out.push((u, v));
                }
            }
            out
        }
        SampleKind::LinearForest => {
            let mut deg = vec![0; n];
            let mut uf = UnionFind::new(n);
            let mut out = Vec::new();
            for (u, v) in edges {
                if deg[u] < 2 && deg[v] < 2 && uf.union(u, v) {
                    deg[u] += 1;
                    deg[v] += 1;
                    out.push((u, v));
                }
            }
            out
        }
        SampleKind::SpanningTree => {
            if !g.is_connected() {
                return Err(Error::KindUnavailable("spanning tree of a disconnected graph".into()));
            }
            let mut uf = UnionFind::new(n);
            edges.into_iter().filter(|&(u, v)| uf.union(u, v)).collect()
        }
    };
    BackbonePair::new(g.clone(), &chosen)
}

/// Every maximal matching of `g`, each as a sorted edge list; refuses more
/// than 10 vertices.
pub fn maximal_matchings(g: &Graph) -> Result<Vec<Vec<Edge>>> {
    if g.n() > 10 {
        return Err(Error::BudgetExceeded(format!("maximal matchings of a graph on {} vertices", g.n())));
    }
    fn go(g: &Graph, i: usize, used: &mut Vec<bool>, cur: &mut Vec<Edge>, out: &mut Vec<Vec<Edge>>) {
        let edges = g.edges();
        if i == edges.len() {
            if edges.iter().all(|&(u, v)| used[u] || used[v]) {
                out.push(cur.clone());
            }
            return;
        }
        let (u, v) = edges[i];
        if !used[u] && !used[v] {
            used[u] = true;
            used[v] = true;
            cur.push(ordered(u, v));
            go(g, i + 1, used, cur, out);
            cur.pop();
            used[u] = false;
            used[v] = false;
        }
        go(g, i + 1, used, cur, out);
    }
    let mut out = Vec::new();
    go(g, 0, &mut vec![false; g.n()], &mut Vec::new(), &mut out);
    Ok(out)
}

/// Every linear forest of `g` (including the empty one) as a sorted edge
/// list; refuses graphs with more than 24 edges.
pub fn linear_forests(g: &Graph) -> Result<Vec<Vec<Edge>>> {
    if g.m() > 24 {
        return Err(Error::BudgetExceeded(format!("linear forests of a graph with {} edges", g.m())));
    }
    fn go(g: &Graph, i: usize, deg: &mut Vec<u8>, cur: &mut Vec<Edge>, out: &mut Vec<Vec<Edge>>) {
        let edges = g.edges();
        if i == edges.len() {
            out.push(cur.clone());
            return;
        }
        go(g, i + 1, deg, cur, out);
        let (u, v) = edges[i];
        if deg[u] < 2 && deg[v] < 2 {
            cur.push((u, v));
            let mut uf = UnionFind::new(g.n());
            let acyclic = cur.iter().all(|&(a, b)| uf.union(a, b));
            if acyclic {
                deg[u] += 1;
                deg[v] += 1;
                go(g, i + 1, deg, cur, out);
                deg[u] -= 1;
                deg[v] -= 1;
            }
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(g, 0, &mut vec![0; g.n()], &mut Vec::new(), &mut out);
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::classes::has_cycle_of_length;
    use crate::graph::BackboneKind;
    use crate::planar::is_planar;

    #[test]
    fn random_planar_examples() {
        let f = Filters { c4_free: true, ..Filters::planar() };
        let a = random_planar(12, 18, &f, 1, 50).unwrap();
        let b = random_planar(12, 18, &f, 1, 50).unwrap();
        assert_eq!(a, b);
        assert_eq!(a.m(), 18);
        assert!(is_planar(&a) && has_cycle_of_length(&a, 4).is_none());
        assert!(matches!(random_planar(10, 30, &Filters::planar(), 0, 5), Err(Error::GiveUp(_))));
        let t = random_planar(5, 4, &Filters::planar(), 3, 5).unwrap();
        assert!(is_planar(&t) && t.m() == 4);
        let c = random_planar(9, 8, &Filters { connected: true, ..Filters::planar() }, 3, 1).unwrap();
        assert!(c.is_connected());
    }

    #[test]
    fn sample_backbone_examples() {
        let c6 = Graph::cycle(6);
        let p = sample_backbone(&c6, SampleKind::Matching, 7).unwrap();
        assert!(p.backbone().len() <= 3 && p.backbone().len() >= 2);
        assert_eq!(p.kind(), BackboneKind::Matching);
        assert_eq!(p, sample_backbone(&c6, SampleKind::Matching, 7).unwrap());

        let p3 = Graph::path(3);
        let p = sample_backbone(&p3, SampleKind::LinearForest, 0).unwrap();
        assert_eq!(p.backbone().len(), 2);

        let two = Graph::new(6, &[(0, 1), (1, 2), (0, 2), (3, 4), (4, 5), (3, 5)]).unwrap();
        assert!(matches!(sample_backbone(&two, SampleKind::SpanningTree, 0), Err(Error::KindUnavailable(_))));
        let t = sample_backbone(&crate::graph::named::petersen(), SampleKind::SpanningTree, 4).unwrap();
        assert_eq!(t.kind(), BackboneKind::Tree);
    }

    #[test]
    fn matchings_of_small_graphs() {
        // C5: the five 2-edge matchings
        assert_eq!(maximal_matchings(&Graph::cycle(5)).unwrap().len(), 5);
        // K4: three perfect matchings
        assert_eq!(maximal_matchings(&Graph::complete(4)).unwrap().len(), 3);
        assert_eq!(maximal_matchings(&Graph::empty(3)).unwrap(), vec![Vec::<Edge>::new()]);
        // C4: every proper edge subset is a linear forest
        assert_eq!(linear_forests(&Graph::cycle(4)).unwrap().len(), 15);
        assert_eq!(linear_forests(&Graph::complete(3)).unwrap().len(), 7);
    }
}
