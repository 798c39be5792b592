//! Simple graphs and backbone pairs.

use serde::{Deserialize, Serialize};

use crate::{Error, Result};

/// An undirected edge stored with `u < v`.
pub type Edge = (usize, usize);

#[inline]
pub fn ordered(u: usize, v: usize) -> Edge {
    if u < v {
        (u, v)
    } else {
        (v, u)
    }
}

/// A simple undirected graph on vertices `0..n`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(into = "GraphRepr", try_from = "GraphRepr")]
pub struct Graph {
    n: usize,
    edges: Vec<Edge>,
    adj: Vec<Vec<usize>>,
}

#[derive(Serialize, Deserialize)]
struct GraphRepr {
    n: usize,
    edges: Vec<Edge>,
}

impl From<Graph> for GraphRepr {
    fn from(g: Graph) -> Self {
        GraphRepr { n: g.n, edges: g.edges }
    }
}

impl TryFrom<GraphRepr> for Graph {
    type Error = Error;
    fn try_from(r: GraphRepr) -> Result<Self> {
        Graph::new(r.n, &r.edges)
    }
}

impl Graph {
    /// Builds a graph, deduplicating repeated pairs. Loops and out-of-range
    /// ids are rejected.
    pub fn new(n: usize, pairs: &[(usize, usize)]) -> Result<Self> {
        let mut edges = Vec::with_capacity(pairs.len());
        for &(u, v) in pairs {
            for w in [u, v] {
                if w >= n {
                    return Err(Error::InvalidVertex { vertex: w, n });
                }
            }
            if u == v {
                return Err(Error::InvalidEdge(u, v));
            }
            edges.push(ordered(u, v));
        }
        edges.sort_unstable();
        edges.dedup();
        Ok(Self::from_sorted_edges(n, edges))
    }

    fn from_sorted_edges(n: usize, edges: Vec<Edge>) -> Self {
        let mut adj = vec![Vec::new(); n];
        for &(u, v) in &edges {
            adj[u].push(v);
            adj[v].push(u);
        }
        for list in &mut adj {
            list.sort_unstable();
        }
        Graph { n, edges, adj }
    }

    pub fn empty(n: usize) -> Self {
        Self::from_sorted_edges(n, Vec::new())
    }

    pub fn complete(n: usize) -> Self {
        let edges = (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v))).collect();
        Self::from_sorted_edges(n, edges)
    }

    pub fn cycle(n: usize) -> Self {
        let pairs: Vec<_> = (0..n).map(|i| (i, (i + 1) % n)).collect();
        Self::new(n, &pairs).expect("cycle needs n >= 3")
    }

    pub fn path(n: usize) -> Self {
        let pairs: Vec<_> = (1..n).map(|i| (i - 1, i)).collect();
        Self::new(n, &pairs).expect("valid path")
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn m(&self) -> usize {
        self.edges.len()
    }

    /// Edges in lexicographic order, each with `u < v`.
    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    /// Sorted neighbor list of `v`.
    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.adj[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].len()
    }

    pub fn degree_sum(&self) -> usize {
        self.adj.iter().map(Vec::len).sum()
    }

    pub fn min_degree(&self) -> usize {
        self.adj.iter().map(Vec::len).min().unwrap_or(0)
    }

    pub fn max_degree(&self) -> usize {
        self.adj.iter().map(Vec::len).max().unwrap_or(0)
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        u < self.n && self.adj[u].binary_search(&v).is_ok()
    }

    /// Position of `(u, v)` in [`Graph::edges`].
    pub fn edge_index(&self, u: usize, v: usize) -> Option<usize> {
        self.edges.binary_search(&ordered(u, v)).ok()
    }

    /// Connected components, each sorted, ordered by smallest vertex.
    pub fn components(&self) -> Vec<Vec<usize>> {
        let mut seen = vec![false; self.n];
        let mut out = Vec::new();
        for s in 0..self.n {
            if seen[s] {
                continue;
            }
            seen[s] = true;
            let mut comp = vec![s];
            let mut i = 0;
            while i < comp.len() {
                let u = comp[i];
                i += 1;
                for &w in &self.adj[u] {
                    if !seen[w] {
                        seen[w] = true;
                        comp.push(w);
                    }
                }
            }
            comp.sort_unstable();
            out.push(comp);
        }
        out
    }

    pub fn is_connected(&self) -> bool {
        self.n <= 1 || self.components().len() == 1
    }

    /// The subgraph induced by `keep`; vertex `i` of the result is
    /// `keep[i]` of `self`.
    pub fn induced(&self, keep: &[usize]) -> (Graph, Vec<usize>) {
        let mut new_id = vec![usize::MAX; self.n];
        for (i, &v) in keep.iter().enumerate() {
            new_id[v] = i;
        }
        let mut edges = Vec::new();
        for &(u, v) in &self.edges {
            if new_id[u] != usize::MAX && new_id[v] != usize::MAX {
                edges.push(ordered(new_id[u], new_id[v]));
            }
        }
        edges.sort_unstable();
        (Self::from_sorted_edges(keep.len(), edges), keep.to_vec())
    }

    /// Deletes `removed`; returns the smaller graph and the new-id -> old-id map.
    pub fn delete_vertices(&self, removed: &[usize]) -> (Graph, Vec<usize>) {
        let mut drop = vec![false; self.n];
        for &v in removed {
            drop[v] = true;
        }
        let keep: Vec<usize> = (0..self.n).filter(|&v| !drop[v]).collect();
        self.induced(&keep)
    }

    /// Relabels vertex `v` as `perm[v]`.
    pub fn relabel(&self, perm: &[usize]) -> Graph {
        let mut edges: Vec<Edge> = self.edges.iter().map(|&(u, v)| ordered(perm[u], perm[v])).collect();
        edges.sort_unstable();
        Self::from_sorted_edges(self.n, edges)
    }

    /// Returns a copy with one extra vertex adjacent to `nbrs`.
    pub fn with_vertex(&self, nbrs: &[usize]) -> Graph {
        let v = self.n;
        let mut edges = self.edges.clone();
        edges.extend(nbrs.iter().map(|&u| (u, v)));
        edges.sort_unstable();
        Self::from_sorted_edges(self.n + 1, edges)
    }

    pub fn with_edge(&self, u: usize, v: usize) -> Graph {
        let mut edges = self.edges.clone();
        edges.push(ordered(u, v));
        edges.sort_unstable();
        edges.dedup();
        Self::from_sorted_edges(self.n, edges)
    }

    pub fn without_edge(&self, u: usize, v: usize) -> Graph {
        let e = ordered(u, v);
        let edges = self.edges.iter().copied().filter(|&x| x != e).collect();
        Self::from_sorted_edges(self.n, edges)
    }
}

/// The classification of a backbone, most specific first.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum BackboneKind {
    Matching,
    LinearForest,
    Tree,
    Forest,
    General,
}

/// A graph together with a spanning backbone subgraph.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BackbonePair {
    graph: Graph,
    backbone: Vec<Edge>,
    bb_adj: Vec<Vec<usize>>,
}

impl BackbonePair {
    pub fn new(graph: Graph, backbone: &[(usize, usize)]) -> Result<Self> {
        let mut edges = Vec::with_capacity(backbone.len());
        for &(u, v) in backbone {
            if u >= graph.n() || v >= graph.n() {
                return Err(Error::InvalidVertex { vertex: u.max(v), n: graph.n() });
            }
            if !graph.has_edge(u, v) {
                return Err(Error::BackboneNotSubgraph(u, v));
            }
            edges.push(ordered(u, v));
        }
        edges.sort_unstable();
        edges.dedup();
        let mut bb_adj = vec![Vec::new(); graph.n()];
        for &(u, v) in &edges {
            bb_adj[u].push(v);
            bb_adj[v].push(u);
        }
        for list in &mut bb_adj {
            list.sort_unstable();
        }
        Ok(BackbonePair { graph, backbone: edges, bb_adj })
    }

    /// A pair with an empty backbone.
    pub fn plain(graph: Graph) -> Self {
        Self::new(graph, &[]).expect("empty backbone")
    }

    /// A pair whose backbone is the whole graph.
    pub fn full(graph: Graph) -> Self {
        let edges = graph.edges().to_vec();
        Self::new(graph, &edges).expect("full backbone")
    }

    pub fn graph(&self) -> &Graph {
        &self.graph
    }

    pub fn n(&self) -> usize {
        self.graph.n()
    }

    pub fn backbone(&self) -> &[Edge] {
        &self.backbone
    }

    pub fn backbone_neighbors(&self, v: usize) -> &[usize] {
        &self.bb_adj[v]
    }

    pub fn is_backbone_edge(&self, u: usize, v: usize) -> bool {
        self.bb_adj[u].binary_search(&v).is_ok()
    }

    /// `d_G(v)`.
    pub fn degree(&self, v: usize) -> usize {
        self.graph.degree(v)
    }

    /// `d_H(v)`.
    pub fn backbone_degree(&self, v: usize) -> usize {
        self.bb_adj[v].len()
    }

    pub fn is_matching(&self) -> bool {
        self.bb_adj.iter().all(|l| l.len() <= 1)
    }

    fn backbone_components(&self) -> usize {
        let mut uf = UnionFind::new(self.n());
        for &(u, v) in &self.backbone {
            uf.union(u, v);
        }
        uf.count()
    }

    pub fn is_forest(&self) -> bool {
        // acyclic iff |E(H)| = n - #components(H)
        self.backbone.len() + self.backbone_components() == self.n()
    }

    pub fn is_linear_forest(&self) -> bool {
        self.bb_adj.iter().all(|l| l.len() <= 2) && self.is_forest()
    }

    pub fn is_spanning_tree(&self) -> bool {
        self.n() > 0 && self.is_forest() && self.backbone_components() == 1
    }

    pub fn kind(&self) -> BackboneKind {
        if self.is_matching() {
            BackboneKind::Matching
        } else if self.is_linear_forest() {
            BackboneKind::LinearForest
        } else if self.is_spanning_tree() {
            BackboneKind::Tree
        } else if self.is_forest() {
            BackboneKind::Forest
        } else {
            BackboneKind::General
        }
    }

    /// Vertices with `d_G(u) + 2 d_H(u) < k`. Each of them can be colored
    /// last by any greedy extension with `k` colors.
    pub fn total_degree_deficient(&self, k: usize) -> Vec<usize> {
        (0..self.n()).filter(|&u| self.degree(u) + 2 * self.backbone_degree(u) < k).collect()
    }

    /// The subpair induced by `keep` (vertex `i` of the result is `keep[i]`).
    pub fn induced(&self, keep: &[usize]) -> (BackbonePair, Vec<usize>) {
        let (g, map) = self.graph.induced(keep);
        let mut new_id = vec![usize::MAX; self.n()];
        for (i, &v) in keep.iter().enumerate() {
            new_id[v] = i;
        }
        let bb: Vec<Edge> = self
            .backbone
            .iter()
            .filter(|&&(u, v)| new_id[u] != usize::MAX && new_id[v] != usize::MAX)
            .map(|&(u, v)| (new_id[u], new_id[v]))
            .collect();
        (BackbonePair::new(g, &bb).expect("induced backbone"), map)
    }

    pub fn relabel(&self, perm: &[usize]) -> BackbonePair {
        let g = self.graph.relabel(perm);
        let bb: Vec<Edge> = self.backbone.iter().map(|&(u, v)| (perm[u], perm[v])).collect();
        BackbonePair::new(g, &bb).expect("relabeled backbone")
    }
}

/// Disjoint-set forest with path halving.
#[derive(Clone, Debug)]
pub(crate) struct UnionFind {
    parent: Vec<usize>,
    sets: usize,
}

impl UnionFind {
    pub(crate) fn new(n: usize) -> Self {
        UnionFind { parent: (0..n).collect(), sets: n }
    }

    pub(crate) fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    /// Returns false when `a` and `b` were already joined.
    pub(crate) fn union(&mut self, a: usize, b: usize) -> bool {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra == rb {
            return false;
        }
        self.parent[ra.max(rb)] = ra.min(rb);
        self.sets -= 1;
        true
    }

    pub(crate) fn count(&self) -> usize {
        self.sets
    }
}

/// Named small graphs used across tests, docs and the demo.
pub mod named {
    use super::Graph;

    pub fn k(n: usize) -> Graph {
        Graph::complete(n)
    }

    /// Two triangles sharing vertex 0.
    pub fn bowtie() -> Graph {
        Graph::new(5, &[(0, 1), (1, 2), (2, 0), (0, 3), (3, 4), (4, 0)]).unwrap()
    }

    /// 4-cycle `0..3` with hub 4.
    pub fn wheel4() -> Graph {
        Graph::new(5, &[(0, 1), (1, 2), (2, 3), (3, 0), (4, 0), (4, 1), (4, 2), (4, 3)]).unwrap()
    }

    /// Square `0-1-2-3` with a triangle `i, i+1, 4+i` glued on each side.
    pub fn square_with_pendant_triangles() -> Graph {
        let mut pairs = vec![(0, 1), (1, 2), (2, 3), (3, 0)];
        for i in 0..4 {
            pairs.push((i, 4 + i));
            pairs.push(((i + 1) % 4, 4 + i));
        }
        Graph::new(8, &pairs).unwrap()
    }

    pub fn cube() -> Graph {
        let mut pairs = Vec::new();
        for u in 0..8usize {
            for b in 0..3 {
                let v = u ^ (1 << b);
                if u < v {
                    pairs.push((u, v));
                }
            }
        }
        Graph::new(8, &pairs).unwrap()
    }

    pub fn petersen() -> Graph {
        let mut pairs = Vec::new();
        for i in 0..5 {
            pairs.push((i, (i + 1) % 5));
            pairs.push((i, i + 5));
            pairs.push((5 + i, 5 + (i + 2) % 5));
        }
        Graph::new(10, &pairs).unwrap()
    }

    pub fn octahedron() -> Graph {
        let pairs: Vec<_> =
            (0..6usize).flat_map(|u| (u + 1..6).map(move |v| (u, v))).filter(|&(u, v)| v != u + 3).collect();
        Graph::new(6, &pairs).unwrap()
    }

    pub fn star(leaves: usize) -> Graph {
        let pairs: Vec<_> = (1..=leaves).map(|i| (0, i)).collect();
        Graph::new(leaves + 1, &pairs).unwrap()
    }
}

#[cfg(test)]
mod tests {
    use super::named::*;
    use super::*;

    #[test]
    fn build_graph_examples() {
        let k3 = Graph::new(3, &[(0, 1), (1, 2), (0, 2)]).unwrap();
        assert_eq!(k3.m(), 3);
        assert!(matches!(Graph::new(2, &[(0, 0)]), Err(Error::InvalidEdge(0, 0))));
        assert!(matches!(Graph::new(2, &[(0, 2)]), Err(Error::InvalidVertex { vertex: 2, n: 2 })));
        assert_eq!(Graph::complete(4).m(), 6);
        let dup = Graph::new(3, &[(0, 1), (1, 0), (0, 1)]).unwrap();
        assert_eq!(dup.edges(), &[(0, 1)]);
    }

    #[test]
    fn attach_backbone_examples() {
        let p = BackbonePair::new(Graph::cycle(6), &[(0, 1), (3, 4)]).unwrap();
        let dh: Vec<_> = (0..6).map(|v| p.backbone_degree(v)).collect();
        assert_eq!(dh, vec![1, 1, 0, 1, 1, 0]);
        let k4 = BackbonePair::new(k(4), &[(0, 1), (2, 3)]).unwrap();
        assert_eq!(k4.kind(), BackboneKind::Matching);
        assert!(matches!(BackbonePair::new(Graph::cycle(6), &[(0, 3)]), Err(Error::BackboneNotSubgraph(0, 3))));
    }

    #[test]
    fn backbone_kinds() {
        let p = BackbonePair::new(k(3), &[(0, 1), (1, 2)]).unwrap();
        assert_eq!(p.kind(), BackboneKind::LinearForest);
        assert_eq!(BackbonePair::full(Graph::cycle(6)).kind(), BackboneKind::General);
        let star = BackbonePair::full(star(3));
        assert_eq!(star.kind(), BackboneKind::Tree);
        let g = Graph::new(6, &[(0, 1), (0, 2), (0, 3), (4, 5)]).unwrap();
        assert_eq!(BackbonePair::full(g).kind(), BackboneKind::Forest);
        assert_eq!(BackbonePair::plain(k(4)).kind(), BackboneKind::Matching);
    }

    #[test]
    fn total_degree_deficient_examples() {
        let p = BackbonePair::new(Graph::cycle(6), &[(0, 1), (3, 4)]).unwrap();
        assert_eq!(p.total_degree_deficient(5), vec![0, 1, 2, 3, 4, 5]);
        assert!(BackbonePair::plain(k(6)).total_degree_deficient(5).is_empty());
        let q3 = BackbonePair::new(cube(), &[(0, 1)]).unwrap();
        assert_eq!(q3.total_degree_deficient(6).len(), 8);
    }

    #[test]
    fn named_graph_shapes() {
        assert_eq!(octahedron().m(), 12);
        assert!(octahedron().neighbors(0).len() == 4);
        assert_eq!(petersen().m(), 15);
        assert_eq!(square_with_pendant_triangles().m(), 12);
        assert_eq!(cube().m(), 12);
    }

    #[test]
    fn induced_keeps_backbone() {
        let p = BackbonePair::new(Graph::cycle(6), &[(0, 1), (3, 4)]).unwrap();
        let (sub, map) = p.induced(&[1, 2, 3, 4]);
        assert_eq!(map, vec![1, 2, 3, 4]);
        assert_eq!(sub.backbone(), &[(2, 3)]);
        assert_eq!(sub.graph().m(), 3);
    }
}
