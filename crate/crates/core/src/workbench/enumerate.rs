//! Exhaustive generation of small graphs up to isomorphism, by vertex
//! addition with canonical-code deduplication.

use std::collections::HashSet;

use super::canonical::{canonical_labeling, Code};
use super::Filters;
use crate::graph::Graph;
use crate::{Error, Result};

/// Largest `n` accepted by the exhaustive enumerators.
pub const ENUMERATION_MAX_N: usize = 10;

/// Graphs on `0..=n_max` vertices passing the hereditary part of `filters`
/// (planarity, forbidden cycles), one representative per isomorphism class,
/// canonically labeled and sorted by code. Connectivity, minimum degree and
/// embedding-dependent filters are not applied here.
pub fn enumerate_levels(n_max: usize, filters: &Filters) -> Result<Vec<Vec<Graph>>> {
    if n_max > ENUMERATION_MAX_N {
        return Err(Error::BudgetExceeded(format!("n = {n_max} exceeds the enumeration cap of {ENUMERATION_MAX_N}")));
    }
    let mut levels = vec![vec![Graph::empty(0)]];
    for n in 1..=n_max {
        let prev = &levels[n - 1];
        let children: Vec<Vec<(Code, Graph)>> = super::par_map(prev, |g| extensions(g, filters));
        let mut seen: HashSet<Code> = HashSet::new();
        let mut level: Vec<(Code, Graph)> =
            children.into_iter().flatten().filter(|(c, _)| seen.insert(c.clone())).collect();
        level.sort_by(|a, b| a.0.cmp(&b.0));
        levels.push(level.into_iter().map(|(_, g)| g).collect());
    }
    Ok(levels)
}

fn extensions(g: &Graph, filters: &Filters) -> Vec<(Code, Graph)> {
    let n = g.n();
    let mut out: Vec<(Code, Graph)> = Vec::new();
    let mut local: HashSet<Code> = HashSet::new();
    for mask in 0u32..(1 << n) {
        let nbrs: Vec<usize> = (0..n).filter(|&i| mask >> i & 1 == 1).collect();
        let h = g.with_vertex(&nbrs);
        if !filters.hereditary_ok(&h) {
            continue;
        }
        let (code, labels) = canonical_labeling(&h);
        if local.insert(code.clone()) {
            out.push((code, h.relabel(&labels)));
        }
    }
    out
}

/// All graphs on exactly `n` vertices passing every filter, up to
/// isomorphism, in canonical order.
pub fn enumerate_graphs(n: usize, filters: &Filters) -> Result<Vec<Graph>> {
    let mut levels = enumerate_levels(n, filters)?;
    let last = levels.pop().unwrap();
    Ok(last.into_iter().filter(|g| filters.output_ok(g)).collect())
}

/// As [`enumerate_graphs`] for every `n` in `1..=n_max`, smallest first.
pub fn enumerate_up_to(n_max: usize, filters: &Filters) -> Result<Vec<Graph>> {
    let levels = enumerate_levels(n_max, filters)?;
    Ok(levels.into_iter().skip(1).flatten().filter(|g| filters.output_ok(g)).collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::classes::has_cycle_of_length;
    use crate::planar::is_planar;

    #[test]
    fn known_counts() {
        let all = Filters::default();
        let levels = enumerate_levels(6, &all).unwrap();
        let sizes: Vec<usize> = levels.iter().map(Vec::len).collect();
        assert_eq!(sizes, vec![1, 1, 2, 4, 11, 34, 156]);
        let conn = Filters::connected();
        let counts: Vec<usize> = (1..=6).map(|n| enumerate_graphs(n, &conn).unwrap().len()).collect();
        assert_eq!(counts, vec![1, 1, 2, 6, 21, 112]);
        assert_eq!(enumerate_graphs(1, &conn).unwrap(), vec![Graph::empty(1)]);
    }

    #[test]
    fn connected_planar_counts() {
        let f = Filters { planar: true, connected: true, ..Filters::default() };
        let counts: Vec<usize> = (1..=7).map(|n| enumerate_graphs(n, &f).unwrap().len()).collect();
        assert_eq!(counts, vec![1, 1, 2, 6, 20, 99, 646]);
    }

    #[test]
    fn small_filtered_example() {
        let f = Filters { planar: true, c4_free: true, c5_free: true, connected: true, ..Filters::default() };
        let gs = enumerate_graphs(4, &f).unwrap();
        // P4, star, paw (triangle + pendant)
        assert_eq!(gs.len(), 3);
        for g in &gs {
            assert!(is_planar(g) && has_cycle_of_length(g, 4).is_none() && g.is_connected());
        }
        let mut edges: Vec<usize> = gs.iter().map(Graph::m).collect();
        edges.sort();
        assert_eq!(edges, vec![3, 3, 4]);
    }

    /// Independent count: isomorphism classes of connected graphs on `n <= 5`
    /// vertices by orbit counting over all labeled graphs.
    #[test]
    fn matches_brute_force_counts() {
        for n in 1..=5usize {
            let pairs: Vec<(usize, usize)> = (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v))).collect();
            let perms = permutations(n);
            let mut classes: HashSet<Vec<(usize, usize)>> = HashSet::new();
            for mask in 0u32..(1 << pairs.len()) {
                let e: Vec<_> = pairs.iter().enumerate().filter(|(i, _)| mask >> i & 1 == 1).map(|(_, &p)| p).collect();
                let g = Graph::new(n, &e).unwrap();
                if !g.is_connected() {
                    continue;
                }
                let min = perms.iter().map(|p| g.relabel(p).edges().to_vec()).min().unwrap();
                classes.insert(min);
            }
            assert_eq!(classes.len(), enumerate_graphs(n, &Filters::connected()).unwrap().len(), "n = {n}");
        }
    }

    fn permutations(n: usize) -> Vec<Vec<usize>> {
        if n == 0 {
            return vec![vec![]];
        }
        let mut out = Vec::new();
        for p in permutations(n - 1) {
            for i in 0..n {
                let mut q = p.clone();
                q.insert(i, n - 1);
                out.push(q);
            }
        }
        out
    }

    #[test]
    fn budget() {
        assert!(matches!(enumerate_graphs(11, &Filters::default()), Err(Error::BudgetExceeded(_))));
    }
}
