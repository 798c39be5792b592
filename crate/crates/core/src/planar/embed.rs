//! Planarity testing with combinatorial embeddings.
//!
//! Each biconnected block is embedded by the Demoucron-Malgrange-Pertuiset
//! path-insertion algorithm; block rotations are concatenated at cut
//! vertices. Non-planar inputs yield a Kuratowski subdivision found by
//! greedy edge deletion.

use std::collections::HashSet;

use serde::{Deserialize, Serialize};

use super::RotationSystem;
use crate::graph::{ordered, Edge, Graph};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum KuratowskiKind {
    K5,
    K33,
}

/// Edge set of a subdivision of K5 or K3,3 contained in the input.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct NonplanarWitness {
    pub kind: KuratowskiKind,
    pub edges: Vec<Edge>,
    pub branch_vertices: Vec<usize>,
}

#[derive(Clone, Debug)]
pub enum Embedding {
    Planar(RotationSystem),
    Nonplanar(NonplanarWitness),
}

impl Embedding {
    pub fn rotation(&self) -> Option<&RotationSystem> {
        match self {
            Embedding::Planar(rs) => Some(rs),
            Embedding::Nonplanar(_) => None,
        }
    }
}

pub fn is_planar(g: &Graph) -> bool {
    if g.n() >= 3 && g.m() > 3 * g.n() - 6 {
        return false;
    }
    embed_rotations(g).is_some()
}

pub fn planarity_embed(g: &Graph) -> Embedding {
    match embed_rotations(g) {
        Some(rot) => Embedding::Planar(RotationSystem::new(g, rot).expect("embedder output is a valid rotation")),
        None => Embedding::Nonplanar(kuratowski_witness(g)),
    }
}

fn embed_rotations(g: &Graph) -> Option<Vec<Vec<usize>>> {
    let mut rot: Vec<Vec<usize>> = vec![Vec::new(); g.n()];
    for block in biconnected_blocks(g) {
        if block.len() == 1 {
            let (u, v) = block[0];
            rot[u].push(v);
            rot[v].push(u);
            continue;
        }
        let mut verts: Vec<usize> = block.iter().flat_map(|&(u, v)| [u, v]).collect();
        verts.sort_unstable();
        verts.dedup();
        let local = |x: usize| verts.binary_search(&x).unwrap();
        let mut adj = vec![Vec::new(); verts.len()];
        for &(u, v) in &block {
            adj[local(u)].push(local(v));
            adj[local(v)].push(local(u));
        }
        for a in &mut adj {
            a.sort_unstable();
        }
        let faces = embed_block(&adj)?;
        for (lv, cyc) in block_rotations(&adj, &faces).into_iter().enumerate() {
            rot[verts[lv]].extend(cyc.into_iter().map(|x| verts[x]));
        }
    }
    Some(rot)
}

/// Edge sets of the biconnected blocks (bridges are single-edge blocks).
fn biconnected_blocks(g: &Graph) -> Vec<Vec<Edge>> {
    struct State<'a> {
        g: &'a Graph,
        disc: Vec<usize>,
        low: Vec<usize>,
        time: usize,
        stack: Vec<Edge>,
        blocks: Vec<Vec<Edge>>,
    }
    fn dfs(s: &mut State, u: usize, parent: usize) {
        s.time += 1;
        s.disc[u] = s.time;
        s.low[u] = s.time;
        for i in 0..s.g.degree(u) {
            let v = s.g.neighbors(u)[i];
            if s.disc[v] == 0 {
                s.stack.push(ordered(u, v));
                dfs(s, v, u);
                s.low[u] = s.low[u].min(s.low[v]);
                if s.low[v] >= s.disc[u] {
                    let e = ordered(u, v);
                    let mut block = Vec::new();
                    while let Some(x) = s.stack.pop() {
                        block.push(x);
                        if x == e {
                            break;
                        }
                    }
                    block.sort_unstable();
                    s.blocks.push(block);
                }
            } else if v != parent && s.disc[v] < s.disc[u] {
                s.stack.push(ordered(u, v));
                s.low[u] = s.low[u].min(s.disc[v]);
            }
        }
    }
    let mut s = State { g, disc: vec![0; g.n()], low: vec![0; g.n()], time: 0, stack: Vec::new(), blocks: Vec::new() };
    for v in 0..g.n() {
        if s.disc[v] == 0 {
            dfs(&mut s, v, usize::MAX);
        }
    }
    s.blocks
}

/// Finds a cycle in a 2-connected graph with at least three vertices.
fn find_cycle(adj: &[Vec<usize>]) -> Vec<usize> {
    let n = adj.len();
    let mut parent = vec![usize::MAX; n];
    let mut depth = vec![usize::MAX; n];
    let mut stack = vec![(0usize, 0usize)];
    depth[0] = 0;
    while let Some(&mut (u, ref mut i)) = stack.last_mut() {
        if *i == adj[u].len() {
            stack.pop();
            continue;
        }
        let v = adj[u][*i];
        *i += 1;
        if depth[v] == usize::MAX {
            depth[v] = depth[u] + 1;
            parent[v] = u;
            stack.push((v, 0));
        } else if v != parent[u] && depth[v] < depth[u] {
            let mut cyc = vec![u];
            let mut x = u;
            while x != v {
                x = parent[x];
                cyc.push(x);
            }
            return cyc;
        }
    }
    unreachable!("2-connected block without a cycle")
}

struct Fragment {
    attach: Vec<usize>,
    edge: Option<(usize, usize)>,
    interior: Vec<usize>,
}

/// DMP on one 2-connected block; returns oriented facial cycles.
fn embed_block(adj: &[Vec<usize>]) -> Option<Vec<Vec<usize>>> {
    let n = adj.len();
    let total_edges: usize = adj.iter().map(Vec::len).sum::<usize>() / 2;
    let cycle = find_cycle(adj);
    let mut in_h = vec![false; n];
    let mut h_edges: HashSet<Edge> = HashSet::new();
    for (i, &v) in cycle.iter().enumerate() {
        in_h[v] = true;
        h_edges.insert(ordered(v, cycle[(i + 1) % cycle.len()]));
    }
    let mut faces = vec![cycle.clone(), cycle.iter().rev().copied().collect::<Vec<_>>()];

    while h_edges.len() < total_edges {
        let frags = fragments(adj, &in_h, &h_edges);
        let mut choice: Option<(usize, usize, usize)> = None; // (fragment, face, admissible count)
        for (fi, frag) in frags.iter().enumerate() {
            let admissible: Vec<usize> = faces
                .iter()
                .enumerate()
                .filter(|(_, f)| frag.attach.iter().all(|a| f.contains(a)))
                .map(|(i, _)| i)
                .collect();
            if admissible.is_empty() {
                return None;
            }
            if choice.is_none_or(|(_, _, c)| admissible.len() < c) {
                choice = Some((fi, admissible[0], admissible.len()));
            }
            if admissible.len() == 1 {
                break;
            }
        }
        let (fi, face_idx, _) = choice.expect("at least one fragment remains");
        let path = fragment_path(adj, &in_h, &frags[fi]);
        for w in path.windows(2) {
            h_edges.insert(ordered(w[0], w[1]));
        }
        for &v in &path {
            in_h[v] = true;
        }
        let face = faces.swap_remove(face_idx);
        let (f1, f2) = split_face(&face, &path);
        faces.push(f1);
        faces.push(f2);
    }
    Some(faces)
}

fn fragments(adj: &[Vec<usize>], in_h: &[bool], h_edges: &HashSet<Edge>) -> Vec<Fragment> {
    let n = adj.len();
    let mut out = Vec::new();
    for u in 0..n {
        if !in_h[u] {
            continue;
        }
        for &v in &adj[u] {
            if u < v && in_h[v] && !h_edges.contains(&(u, v)) {
                out.push(Fragment { attach: vec![u, v], edge: Some((u, v)), interior: Vec::new() });
            }
        }
    }
    let mut seen = vec![false; n];
    for s in 0..n {
        if in_h[s] || seen[s] {
            continue;
        }
        seen[s] = true;
        let mut comp = vec![s];
        let mut attach = Vec::new();
        let mut i = 0;
        while i < comp.len() {
            let u = comp[i];
            i += 1;
            for &w in &adj[u] {
                if in_h[w] {
                    attach.push(w);
                } else if !seen[w] {
                    seen[w] = true;
                    comp.push(w);
                }
            }
        }
        attach.sort_unstable();
        attach.dedup();
        out.push(Fragment { attach, edge: None, interior: comp });
    }
    out
}

/// A path through the fragment between two distinct attachment vertices.
fn fragment_path(adj: &[Vec<usize>], in_h: &[bool], frag: &Fragment) -> Vec<usize> {
    if let Some((u, v)) = frag.edge {
        return vec![u, v];
    }
    let a = frag.attach[0];
    let inside: HashSet<usize> = frag.interior.iter().copied().collect();
    let mut parent = std::collections::HashMap::new();
    let mut queue = std::collections::VecDeque::new();
    for &c in &adj[a] {
        if inside.contains(&c) && !parent.contains_key(&c) {
            parent.insert(c, a);
            queue.push_back(c);
        }
    }
    while let Some(x) = queue.pop_front() {
        if let Some(&b) = adj[x].iter().find(|&&b| in_h[b] && b != a) {
            let mut path = vec![b, x];
            let mut y = x;
            while let Some(&p) = parent.get(&y) {
                path.push(p);
                if p == a {
                    break;
                }
                y = p;
            }
            path.reverse();
            return path;
        }
        for &w in &adj[x] {
            if inside.contains(&w) && !parent.contains_key(&w) {
                parent.insert(w, x);
                queue.push_back(w);
            }
        }
    }
    unreachable!("fragment of a 2-connected block has two attachments")
}

/// Splits an oriented facial cycle along a path joining two of its vertices.
fn split_face(face: &[usize], path: &[usize]) -> (Vec<usize>, Vec<usize>) {
    let len = face.len();
    let a = path[0];
    let b = *path.last().unwrap();
    let ia = face.iter().position(|&x| x == a).unwrap();
    let ib = face.iter().position(|&x| x == b).unwrap();
    let inner = &path[1..path.len() - 1];
    let mut f1 = Vec::new();
    let mut i = ia;
    loop {
        f1.push(face[i]);
        if i == ib {
            break;
        }
        i = (i + 1) % len;
    }
    f1.extend(inner.iter().rev());
    let mut f2 = Vec::new();
    let mut i = ib;
    loop {
        f2.push(face[i]);
        if i == ia {
            break;
        }
        i = (i + 1) % len;
    }
    f2.extend(inner.iter());
    (f1, f2)
}

/// Converts oriented faces into per-vertex cyclic neighbor orders. Walking
/// `x -> v -> y` along a face means `y` follows `x` in the rotation at `v`.
fn block_rotations(adj: &[Vec<usize>], faces: &[Vec<usize>]) -> Vec<Vec<usize>> {
    let n = adj.len();
    let mut succ: Vec<std::collections::HashMap<usize, usize>> = vec![Default::default(); n];
    for f in faces {
        let len = f.len();
        for i in 0..len {
            let (x, v, y) = (f[(i + len - 1) % len], f[i], f[(i + 1) % len]);
            succ[v].insert(x, y);
        }
    }
    (0..n)
        .map(|v| {
            let start = adj[v][0];
            let mut cyc = vec![start];
            let mut x = succ[v][&start];
            while x != start {
                cyc.push(x);
                x = succ[v][&x];
            }
            debug_assert_eq!(cyc.len(), adj[v].len());
            cyc
        })
        .collect()
}

fn kuratowski_witness(g: &Graph) -> NonplanarWitness {
    let mut h = g.clone();
    for &(u, v) in g.edges() {
        let smaller = h.without_edge(u, v);
        if !is_planar(&smaller) {
            h = smaller;
        }
    }
    let branch: Vec<usize> = (0..h.n()).filter(|&v| h.degree(v) >= 3).collect();
    let kind = if branch.len() == 5 && branch.iter().all(|&v| h.degree(v) == 4) {
        KuratowskiKind::K5
    } else {
        KuratowskiKind::K33
    };
    NonplanarWitness { kind, edges: h.edges().to_vec(), branch_vertices: branch }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::named;

    #[test]
    fn blocks_of_bowtie() {
        let blocks = biconnected_blocks(&named::bowtie());
        assert_eq!(blocks.len(), 2);
        assert!(blocks.iter().all(|b| b.len() == 3));
        let path = biconnected_blocks(&Graph::path(4));
        assert_eq!(path.len(), 3);
    }

    #[test]
    fn k5_and_k33_witnesses() {
        match planarity_embed(&Graph::complete(5)) {
            Embedding::Nonplanar(w) => {
                assert_eq!(w.kind, KuratowskiKind::K5);
                assert_eq!(w.edges.len(), 10);
            }
            Embedding::Planar(_) => panic!("K5 embedded"),
        }
        let mut pairs = Vec::new();
        for a in 0..3 {
            for b in 3..6 {
                pairs.push((a, b));
            }
        }
        let k33 = Graph::new(6, &pairs).unwrap();
        match planarity_embed(&k33) {
            Embedding::Nonplanar(w) => assert_eq!(w.kind, KuratowskiKind::K33),
            Embedding::Planar(_) => panic!("K3,3 embedded"),
        }
        let pet = planarity_embed(&named::petersen());
        let Embedding::Nonplanar(w) = pet else { panic!("Petersen embedded") };
        assert_eq!(w.kind, KuratowskiKind::K33);
        assert_eq!(w.branch_vertices.len(), 6);
    }

    #[test]
    fn planar_examples_embed() {
        for g in [Graph::complete(4), Graph::cycle(6), named::cube(), named::octahedron(), named::bowtie()] {
            assert!(is_planar(&g));
        }
    }
}
