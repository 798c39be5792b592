//! Canonical labeling for small graphs by partition refinement with
//! individualization.
//!
//! The search tree is isomorphism-invariant, so the smallest adjacency code
//! over its leaves is a canonical form. Twin vertices (equal neighborhoods up
//! to each other) are interchangeable by an automorphism and only one of each
//! twin class is individualized.

use crate::graph::{BackbonePair, Graph};

/// Largest vertex count handled here; codes are packed into `u128`.
pub const CANON_MAX_N: usize = 16;

/// Upper-triangle bit codes, one per edge layer; compared lexicographically.
pub type Code = Vec<u128>;

struct Canon<'a> {
    n: usize,
    layers: &'a [Vec<u16>],
    best: Option<(Code, Vec<usize>)>,
}

impl Canon<'_> {
    /// Splits cells by (neighbor counts in every cell, per layer) until stable.
    fn refine(&self, cells: &mut Vec<Vec<usize>>) {
        loop {
            let mut cell_of = vec![0usize; self.n];
            for (i, c) in cells.iter().enumerate() {
                for &v in c {
                    cell_of[v] = i;
                }
            }
            let mut next = Vec::with_capacity(cells.len());
            for c in cells.iter() {
                if c.len() == 1 {
                    next.push(c.clone());
                    continue;
                }
                let mut keyed: Vec<(Vec<u32>, usize)> = c
                    .iter()
                    .map(|&v| {
                        let mut sig = vec![0u32; cells.len() * self.layers.len()];
                        for (l, adj) in self.layers.iter().enumerate() {
                            let mut bits = adj[v];
                            while bits != 0 {
                                let w = bits.trailing_zeros() as usize;
                                bits &= bits - 1;
                                sig[l * cells.len() + cell_of[w]] += 1;
                            }
                        }
                        (sig, v)
                    })
                    .collect();
                keyed.sort();
                let mut start = 0;
                for i in 1..=keyed.len() {
                    if i == keyed.len() || keyed[i].0 != keyed[start].0 {
                        next.push(keyed[start..i].iter().map(|&(_, v)| v).collect());
                        start = i;
                    }
                }
            }
            let stable = next.len() == cells.len();
            *cells = next;
            if stable {
                return;
            }
        }
    }

    fn code(&self, cells: &[Vec<usize>]) -> (Code, Vec<usize>) {
        // pos[v] is the new label of v
        let mut pos = vec![0; self.n];
        for (i, c) in cells.iter().enumerate() {
            pos[c[0]] = i;
        }
        let mut inv = vec![0; self.n];
        for v in 0..self.n {
            inv[pos[v]] = v;
        }
        let code = self
            .layers
            .iter()
            .map(|adj| {
                let mut x: u128 = 0;
                for i in 0..self.n {
                    for j in i + 1..self.n {
                        x = (x << 1) | ((adj[inv[i]] >> inv[j]) & 1) as u128;
                    }
                }
                x
            })
            .collect();
        (code, pos)
    }

    fn twins(&self, a: usize, b: usize) -> bool {
        let (ma, mb) = (!(1u16 << b), !(1u16 << a));
        self.layers.iter().all(|adj| adj[a] & ma == adj[b] & mb)
    }

    fn search(&mut self, mut cells: Vec<Vec<usize>>) {
        self.refine(&mut cells);
        let Some(t) = cells.iter().position(|c| c.len() > 1) else {
            let (code, pos) = self.code(&cells);
            if self.best.as_ref().is_none_or(|(b, _)| code < *b) {
                self.best = Some((code, pos));
            }
            return;
        };
        let target = cells[t].clone();
        let mut tried: Vec<usize> = Vec::new();
        for &v in &target {
            if tried.iter().any(|&u| self.twins(u, v)) {
                continue;
            }
            tried.push(v);
            let mut child = cells[..t].to_vec();
            child.push(vec![v]);
            child.push(target.iter().copied().filter(|&w| w != v).collect());
            child.extend_from_slice(&cells[t + 1..]);
            self.search(child);
        }
    }
}

/// Canonical code and labeling (`labels[v]` = new id of `v`) of the
/// multi-layer graph whose layers are given as adjacency bitmasks.
fn canonical_layers(n: usize, layers: &[Vec<u16>]) -> (Code, Vec<usize>) {
    assert!(n <= CANON_MAX_N, "canonical form supports at most {CANON_MAX_N} vertices");
    if n == 0 {
        return (vec![0; layers.len()], Vec::new());
    }
    let mut c = Canon { n, layers, best: None };
    c.search(vec![(0..n).collect()]);
    c.best.unwrap()
}

fn masks(n: usize, edges: &[(usize, usize)]) -> Vec<u16> {
    let mut adj = vec![0u16; n];
    for &(u, v) in edges {
        adj[u] |= 1 << v;
        adj[v] |= 1 << u;
    }
    adj
}

/// Canonical code and labeling of a graph on at most 16 vertices.
pub fn canonical_labeling(g: &Graph) -> (Code, Vec<usize>) {
    canonical_layers(g.n(), &[masks(g.n(), g.edges())])
}

/// The code alone; two graphs are isomorphic iff codes (and `n`) agree.
pub fn canonical_code(g: &Graph) -> Code {
    canonical_labeling(g).0
}

/// The canonically relabeled graph.
pub fn canonical_form(g: &Graph) -> Graph {
    g.relabel(&canonical_labeling(g).1)
}

/// Canonical code of a pair, up to isomorphisms of `G` that map backbone
/// to backbone.
pub fn canonical_pair_code(p: &BackbonePair) -> Code {
    let g = p.graph();
    canonical_layers(g.n(), &[masks(g.n(), g.edges()), masks(g.n(), p.backbone())]).0
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::named;
    use proptest::prelude::*;

    #[test]
    fn isomorphic_graphs_agree() {
        let p = named::petersen();
        let perm = vec![3, 7, 1, 0, 9, 2, 8, 5, 4, 6];
        assert_eq!(canonical_code(&p), canonical_code(&p.relabel(&perm)));
        assert_ne!(canonical_code(&Graph::cycle(6)), canonical_code(&named::bowtie().with_vertex(&[])));
        // C6 versus two triangles: same degree sequence
        let two_tri = Graph::new(6, &[(0, 1), (1, 2), (0, 2), (3, 4), (4, 5), (3, 5)]).unwrap();
        assert_ne!(canonical_code(&Graph::cycle(6)), canonical_code(&two_tri));
    }

    #[test]
    fn pair_codes_see_the_backbone() {
        let c4 = Graph::cycle(4);
        let a = BackbonePair::new(c4.clone(), &[(0, 1)]).unwrap();
        let b = BackbonePair::new(c4.clone(), &[(2, 3)]).unwrap();
        let c = BackbonePair::new(c4, &[(0, 1), (2, 3)]).unwrap();
        assert_eq!(canonical_pair_code(&a), canonical_pair_code(&b));
        assert_ne!(canonical_pair_code(&a), canonical_pair_code(&c));
    }

    fn arb_graph() -> impl Strategy<Value = (Graph, Vec<usize>)> {
        (1usize..9).prop_flat_map(|n| {
            let pairs: Vec<(usize, usize)> = (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v))).collect();
            let m = pairs.len();
            (proptest::collection::vec(any::<bool>(), m), Just(pairs), Just((0..n).collect::<Vec<_>>()).prop_shuffle())
                .prop_map(move |(keep, pairs, perm)| {
                    let e: Vec<_> = pairs.into_iter().zip(keep).filter(|x| x.1).map(|x| x.0).collect();
                    (Graph::new(n, &e).unwrap(), perm)
                })
        })
    }

    proptest! {
        #[test]
        fn invariant_under_relabeling((g, perm) in arb_graph()) {
            let h = g.relabel(&perm);
            prop_assert_eq!(canonical_code(&g), canonical_code(&h));
            prop_assert_eq!(canonical_form(&g), canonical_form(&h));
        }
    }
}
