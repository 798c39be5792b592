//! Graph-class membership for the three colorer hypotheses.

use serde::{Deserialize, Serialize};

use crate::graph::{BackboneKind, BackbonePair, Edge, Graph};
use crate::planar::{FaceSet, PlaneGraph, RotationSystem};
use crate::Result;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Theorem {
    /// Planar, no 4- or 5-cycles, matching backbone: CBC <= 5.
    Thm1,
    /// Plane, no two 3-faces sharing an edge, matching backbone: CBC <= 6.
    Thm2,
    /// Planar, no 4-cycles, linear-forest backbone: CBC <= 7.
    Thm3,
}

impl Theorem {
    pub fn bound(self) -> u32 {
        match self {
            Theorem::Thm1 => 5,
            Theorem::Thm2 => 6,
            Theorem::Thm3 => 7,
        }
    }

    pub fn number(self) -> u8 {
        match self {
            Theorem::Thm1 => 1,
            Theorem::Thm2 => 2,
            Theorem::Thm3 => 3,
        }
    }

    pub fn from_number(n: u8) -> Option<Theorem> {
        match n {
            1 => Some(Theorem::Thm1),
            2 => Some(Theorem::Thm2),
            3 => Some(Theorem::Thm3),
            _ => None,
        }
    }
}

/// A cycle subgraph (not necessarily induced) with exactly `len` vertices,
/// as a vertex sequence starting at its smallest vertex.
pub fn has_cycle_of_length(g: &Graph, len: usize) -> Option<Vec<usize>> {
    if len < 3 {
        return None;
    }
    fn extend(g: &Graph, len: usize, path: &mut Vec<usize>, on: &mut [bool]) -> bool {
        let s = path[0];
        let last = *path.last().unwrap();
        if path.len() == len {
            return g.has_edge(last, s);
        }
        for &w in g.neighbors(last) {
            // the start is the smallest vertex; the second vertex is smaller
            // than the last to avoid tracing each cycle twice
            if w <= s || on[w] || (path.len() == len - 1 && w < path[1]) {
                continue;
            }
            on[w] = true;
            path.push(w);
            if extend(g, len, path, on) {
                return true;
            }
            path.pop();
            on[w] = false;
        }
        false
    }
    let mut on = vec![false; g.n()];
    for s in 0..g.n() {
        let mut path = vec![s];
        on[s] = true;
        if extend(g, len, &mut path, &mut on) {
            return Some(path);
        }
        on[s] = false;
    }
    None
}

/// An edge with a 3-face on both sides.
pub fn adjacent_3faces(g: &Graph, fs: &FaceSet) -> Option<Edge> {
    g.edges().iter().copied().find(|&(u, v)| {
        let (a, b) = fs.faces_of_edge(u, v);
        fs.face(a).degree() == 3 && fs.face(b).degree() == 3
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum EmbeddingSource {
    Computed,
    Supplied,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ClassReport {
    pub planar: bool,
    pub c4_free: bool,
    pub c5_free: bool,
    /// `None` when the graph is not planar.
    pub no_adjacent_3faces: Option<bool>,
    pub embedding: Option<EmbeddingSource>,
    pub backbone_kind: BackboneKind,
    pub theorem_classes: Vec<Theorem>,
}

impl ClassReport {
    pub fn contains(&self, t: Theorem) -> bool {
        self.theorem_classes.contains(&t)
    }
}

/// Classifies `p`, evaluating the face condition on `rotation` if given and
/// on the computed embedding otherwise.
pub fn classify(p: &BackbonePair, rotation: Option<&RotationSystem>) -> Result<ClassReport> {
    let plane = match rotation {
        Some(rs) => Some((PlaneGraph::with_rotation(p.graph().clone(), rs.clone())?, EmbeddingSource::Supplied)),
        None => PlaneGraph::embed(p.graph()).ok().map(|pg| (pg, EmbeddingSource::Computed)),
    };
    Ok(report(p, plane.as_ref().map(|(pg, src)| (pg, *src))))
}

/// Classifies `p` on a fixed plane embedding of its graph.
pub fn classify_plane(p: &BackbonePair, pg: &PlaneGraph) -> ClassReport {
    report(p, Some((pg, EmbeddingSource::Supplied)))
}

fn report(p: &BackbonePair, plane: Option<(&PlaneGraph, EmbeddingSource)>) -> ClassReport {
    let g = p.graph();
    let planar = plane.is_some();
    let c4_free = has_cycle_of_length(g, 4).is_none();
    let c5_free = has_cycle_of_length(g, 5).is_none();
    let no_adjacent_3faces = plane.map(|(pg, _)| adjacent_3faces(g, pg.faces()).is_none());
    let kind = p.kind();
    let matching = kind == BackboneKind::Matching;
    let linear = matching || kind == BackboneKind::LinearForest;
    let mut theorem_classes = Vec::new();
    if planar && c4_free && c5_free && matching {
        theorem_classes.push(Theorem::Thm1);
    }
    if planar && no_adjacent_3faces == Some(true) && matching {
        theorem_classes.push(Theorem::Thm2);
    }
    if planar && c4_free && linear {
        theorem_classes.push(Theorem::Thm3);
    }
    ClassReport {
        planar,
        c4_free,
        c5_free,
        no_adjacent_3faces,
        embedding: plane.map(|(_, s)| s),
        backbone_kind: kind,
        theorem_classes,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::named;

    fn is_cycle(g: &Graph, c: &[usize]) -> bool {
        let mut seen = c.to_vec();
        seen.sort_unstable();
        seen.dedup();
        seen.len() == c.len() && (0..c.len()).all(|i| g.has_edge(c[i], c[(i + 1) % c.len()]))
    }

    #[test]
    fn cycle_examples() {
        let k4 = Graph::complete(4);
        assert!(is_cycle(&k4, &has_cycle_of_length(&k4, 4).unwrap()));
        let c6 = Graph::cycle(6);
        assert!(has_cycle_of_length(&c6, 4).is_none());
        assert!(has_cycle_of_length(&c6, 5).is_none());
        assert!(has_cycle_of_length(&c6, 6).is_some());
        let p = named::petersen();
        assert!(has_cycle_of_length(&p, 4).is_none());
        assert!(is_cycle(&p, &has_cycle_of_length(&p, 5).unwrap()));
    }

    /// Oracle: try every ordered vertex sequence.
    fn brute_cycle(g: &Graph, len: usize) -> bool {
        fn go(g: &Graph, len: usize, seq: &mut Vec<usize>) -> bool {
            if seq.len() == len {
                return g.has_edge(seq[len - 1], seq[0]);
            }
            for v in 0..g.n() {
                if !seq.contains(&v) && (seq.is_empty() || g.has_edge(*seq.last().unwrap(), v)) {
                    seq.push(v);
                    if go(g, len, seq) {
                        return true;
                    }
                    seq.pop();
                }
            }
            false
        }
        go(g, len, &mut Vec::new())
    }

    #[test]
    fn cycle_detection_matches_brute_force() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(5);
        for _ in 0..400 {
            let n = rng.gen_range(3..=7);
            let mut edges = Vec::new();
            for v in 1..n {
                for u in 0..v {
                    if rng.gen_bool(0.4) {
                        edges.push((u, v));
                    }
                }
            }
            let g = Graph::new(n, &edges).unwrap();
            for len in [3, 4, 5] {
                let found = has_cycle_of_length(&g, len);
                assert_eq!(found.is_some(), brute_cycle(&g, len), "{edges:?} len {len}");
                if let Some(c) = found {
                    assert!(is_cycle(&g, &c));
                }
            }
        }
    }

    #[test]
    fn face_adjacency() {
        let k4 = PlaneGraph::embed(&Graph::complete(4)).unwrap();
        assert!(adjacent_3faces(k4.graph(), k4.faces()).is_some());
        let bowtie = PlaneGraph::embed(&named::bowtie()).unwrap();
        assert!(adjacent_3faces(bowtie.graph(), bowtie.faces()).is_none());
        let sq = PlaneGraph::embed(&named::square_with_pendant_triangles()).unwrap();
        assert!(adjacent_3faces(sq.graph(), sq.faces()).is_none());
    }

    #[test]
    fn classify_examples() {
        let c6 = BackbonePair::new(Graph::cycle(6), &[(0, 1), (3, 4)]).unwrap();
        let r = classify(&c6, None).unwrap();
        assert_eq!(r.theorem_classes, vec![Theorem::Thm1, Theorem::Thm2, Theorem::Thm3]);

        let k4 = BackbonePair::new(Graph::complete(4), &[(0, 1), (2, 3)]).unwrap();
        assert!(classify(&k4, None).unwrap().theorem_classes.is_empty());

        let cube = BackbonePair::new(named::cube(), &[(0, 1)]).unwrap();
        let r = classify(&cube, None).unwrap();
        assert_eq!(r.theorem_classes, vec![Theorem::Thm2]);
        assert_eq!(r.embedding, Some(EmbeddingSource::Computed));

        let k5 = BackbonePair::plain(Graph::complete(5));
        let r = classify(&k5, None).unwrap();
        assert!(!r.planar && r.no_adjacent_3faces.is_none());
    }
}
