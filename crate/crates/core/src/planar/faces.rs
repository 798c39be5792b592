use serde::Serialize;

use super::RotationSystem;
use crate::classes::has_cycle_of_length;
use crate::graph::{Edge, Graph, UnionFind};
use crate::{Error, Result};

/// A closed boundary walk, stored as its darts in walking order. An isolated
/// vertex bounds a single face with no darts.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Face {
    darts: Vec<Edge>,
    isolated: Option<usize>,
}

impl Face {
    pub fn darts(&self) -> &[Edge] {
        &self.darts
    }

    /// Length of the boundary walk; bridges count twice.
    pub fn degree(&self) -> usize {
        self.darts.len()
    }

    /// Distinct vertices on the boundary, sorted.
    pub fn vertices(&self) -> Vec<usize> {
        let mut vs: Vec<usize> = self.darts.iter().map(|d| d.0).chain(self.isolated).collect();
        vs.sort_unstable();
        vs.dedup();
        vs
    }

    /// The walk as a vertex sequence.
    pub fn walk(&self) -> Vec<usize> {
        match self.isolated {
            Some(v) => vec![v],
            None => self.darts.iter().map(|d| d.0).collect(),
        }
    }
}

/// All faces of a rotation system, traced per connected component.
#[derive(Clone, Debug)]
pub struct FaceSet {
    faces: Vec<Face>,
    /// `dart_face[u][i]` is the face to the side of dart `u -> neighbors(u)[i]`.
    dart_face: Vec<Vec<usize>>,
    nbrs: Vec<Vec<usize>>,
}

impl FaceSet {
    pub fn trace(g: &Graph, rs: &RotationSystem) -> Result<FaceSet> {
        if rs.n() != g.n() {
            return Err(Error::InconsistentRotation("vertex count mismatch".into()));
        }
        let nbrs: Vec<Vec<usize>> = (0..g.n()).map(|v| g.neighbors(v).to_vec()).collect();
        let idx = |u: usize, v: usize| nbrs[u].binary_search(&v).expect("dart of g");
        let mut dart_face: Vec<Vec<usize>> = nbrs.iter().map(|l| vec![usize::MAX; l.len()]).collect();
        let mut faces = Vec::new();
        for u in 0..g.n() {
            if nbrs[u].is_empty() {
                faces.push(Face { darts: Vec::new(), isolated: Some(u) });
                continue;
            }
            for i in 0..nbrs[u].len() {
                if dart_face[u][i] != usize::MAX {
                    continue;
                }
                let id = faces.len();
                let start = (u, nbrs[u][i]);
                let mut darts = Vec::new();
                let (mut a, mut b) = start;
                loop {
                    let slot = &mut dart_face[a][idx(a, b)];
                    if *slot != usize::MAX {
                        return Err(Error::InconsistentRotation(format!("dart {a}->{b} traced twice")));
                    }
                    *slot = id;
                    darts.push((a, b));
                    let c = rs.successor(b, a);
                    (a, b) = (b, c);
                    if (a, b) == start {
                        break;
                    }
                }
                faces.push(Face { darts, isolated: None });
            }
        }
        Ok(FaceSet { faces, dart_face, nbrs })
    }

    pub fn len(&self) -> usize {
        self.faces.len()
    }

    pub fn is_empty(&self) -> bool {
        self.faces.is_empty()
    }

    pub fn faces(&self) -> &[Face] {
        &self.faces
    }

    pub fn face(&self, f: usize) -> &Face {
        &self.faces[f]
    }

    /// The face traversing dart `u -> v`.
    pub fn face_of_dart(&self, u: usize, v: usize) -> usize {
        self.dart_face[u][self.nbrs[u].binary_search(&v).expect("dart")]
    }

    /// The two faces on either side of edge `uv` (equal for a bridge).
    pub fn faces_of_edge(&self, u: usize, v: usize) -> (usize, usize) {
        (self.face_of_dart(u, v), self.face_of_dart(v, u))
    }

    pub fn count_of_degree(&self, d: usize) -> usize {
        self.faces.iter().filter(|f| f.degree() == d).count()
    }

    pub fn f3(&self) -> usize {
        self.count_of_degree(3)
    }

    pub fn f4(&self) -> usize {
        self.count_of_degree(4)
    }

    pub fn f5(&self) -> usize {
        self.count_of_degree(5)
    }

    /// Faces incident to `v`, sorted.
    pub fn faces_at(&self, v: usize) -> Vec<usize> {
        if self.nbrs[v].is_empty() {
            return self.faces.iter().position(|f| f.isolated == Some(v)).into_iter().collect();
        }
        let mut fs = self.dart_face[v].clone();
        fs.sort_unstable();
        fs.dedup();
        fs
    }

    /// Euler's formula `n - m + f = 2` on every component.
    pub fn satisfies_euler(&self, g: &Graph) -> bool {
        let comps = g.components();
        let mut comp_of = vec![0; g.n()];
        for (c, vs) in comps.iter().enumerate() {
            for &v in vs {
                comp_of[v] = c;
            }
        }
        let mut faces = vec![0usize; comps.len()];
        for f in &self.faces {
            let v = f.isolated.unwrap_or_else(|| f.darts[0].0);
            faces[comp_of[v]] += 1;
        }
        comps.iter().enumerate().all(|(c, vs)| {
            let m: usize = vs.iter().map(|&v| g.degree(v)).sum::<usize>() / 2;
            vs.len() + faces[c] == m + 2
        })
    }
}

/// The dual multigraph: one vertex per face, one edge per primal edge.
#[derive(Clone, Debug)]
pub struct DualMultigraph {
    face_count: usize,
    /// Indexed like [`Graph::edges`]; `(f, f)` is a loop.
    edges: Vec<(usize, usize)>,
}

impl DualMultigraph {
    pub fn new(g: &Graph, fs: &FaceSet) -> Self {
        let edges = g.edges().iter().map(|&(u, v)| fs.faces_of_edge(u, v)).collect();
        DualMultigraph { face_count: fs.len(), edges }
    }

    pub fn face_count(&self) -> usize {
        self.face_count
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    /// Dual degree; a loop contributes two.
    pub fn degree(&self, f: usize) -> usize {
        self.edges.iter().map(|&(a, b)| (a == f) as usize + (b == f) as usize).sum()
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Island {
    pub faces: Vec<usize>,
    pub dual_edges: usize,
    pub acyclic: bool,
    pub all_degree_r: bool,
    pub bad: bool,
}

/// Components of the dual after deleting the faces of degree 3.
///
/// Cycles are counted in the multigraph: parallel dual edges and loops make
/// a component cyclic.
#[derive(Clone, Debug, Serialize)]
pub struct IslandDecomposition {
    pub r: usize,
    pub islands: Vec<Island>,
    /// Island of each face; `None` for 3-faces.
    pub face_island: Vec<Option<usize>>,
    /// `Γ(f)` for each 3-face `f` (empty for other faces): bad islands
    /// joined to `f` by a dual edge.
    pub gamma_of_face: Vec<Vec<usize>>,
    pub gamma: usize,
}

impl IslandDecomposition {
    pub fn new(dual: &DualMultigraph, fs: &FaceSet, r: usize) -> Self {
        let nf = dual.face_count();
        let keep: Vec<bool> = (0..nf).map(|f| fs.face(f).degree() != 3).collect();
        let mut uf = UnionFind::new(nf);
        for &(a, b) in dual.edges() {
            if keep[a] && keep[b] {
                uf.union(a, b);
            }
        }
        let mut root_island = vec![usize::MAX; nf];
        let mut face_island = vec![None; nf];
        let mut islands: Vec<Island> = Vec::new();
        for f in 0..nf {
            if !keep[f] {
                continue;
            }
            let root = uf.find(f);
            if root_island[root] == usize::MAX {
                root_island[root] = islands.len();
                islands.push(Island {
                    faces: Vec::new(),
                    dual_edges: 0,
                    acyclic: false,
                    all_degree_r: true,
                    bad: false,
                });
            }
            let id = root_island[root];
            face_island[f] = Some(id);
            islands[id].faces.push(f);
            islands[id].all_degree_r &= fs.face(f).degree() == r;
        }
        for &(a, b) in dual.edges() {
            if keep[a] && keep[b] {
                islands[face_island[a].unwrap()].dual_edges += 1;
            }
        }
        for isl in &mut islands {
            isl.acyclic = isl.dual_edges + 1 == isl.faces.len();
            isl.bad = isl.acyclic && isl.all_degree_r;
        }
        let mut gamma_of_face = vec![Vec::new(); nf];
        for &(a, b) in dual.edges() {
            for (t, other) in [(a, b), (b, a)] {
                if keep[t] || !keep[other] {
                    continue;
                }
                let isl = face_island[other].unwrap();
                if islands[isl].bad {
                    gamma_of_face[t].push(isl);
                }
            }
        }
        for list in &mut gamma_of_face {
            list.sort_unstable();
            list.dedup();
        }
        let gamma = islands.iter().filter(|i| i.bad).count();
        IslandDecomposition { r, islands, face_island, gamma_of_face, gamma }
    }

    pub fn bad_islands(&self) -> impl Iterator<Item = usize> + '_ {
        self.islands.iter().enumerate().filter(|(_, i)| i.bad).map(|(id, _)| id)
    }

    /// `Γ(v)`: bad islands with a face incident to `v`.
    pub fn gamma_of_vertex(&self, fs: &FaceSet, v: usize) -> Vec<usize> {
        let mut out: Vec<usize> =
            fs.faces_at(v).into_iter().filter_map(|f| self.face_island[f]).filter(|&i| self.islands[i].bad).collect();
        out.sort_unstable();
        out.dedup();
        out
    }
}

/// For a C4-free plane graph every edge lies on some face of degree > 3.
/// Returns an edge violating this, or `None`.
pub fn every_edge_on_big_face(g: &Graph, fs: &FaceSet) -> Result<Option<Edge>> {
    if has_cycle_of_length(g, 4).is_some() {
        return Err(Error::PreconditionC4);
    }
    Ok(g.edges().iter().copied().find(|&(u, v)| {
        let (a, b) = fs.faces_of_edge(u, v);
        fs.face(a).degree() <= 3 && fs.face(b).degree() <= 3
    }))
}

#[cfg(test)]
mod tests {
    use super::super::PlaneGraph;
    use super::*;
    use crate::graph::named;

    fn degrees(pg: &PlaneGraph) -> Vec<usize> {
        let mut d: Vec<usize> = pg.faces().faces().iter().map(Face::degree).collect();
        d.sort_unstable();
        d
    }

    /// Square-with-pendant-triangles with every triangle drawn outside the square.
    pub(crate) fn square_pendants_plane() -> PlaneGraph {
        let g = named::square_with_pendant_triangles();
        let rot = vec![
            vec![1, 4, 7, 3],
            vec![2, 5, 4, 0],
            vec![3, 6, 5, 1],
            vec![0, 7, 6, 2],
            vec![0, 1],
            vec![1, 2],
            vec![2, 3],
            vec![3, 0],
        ];
        PlaneGraph::with_rotation(g.clone(), RotationSystem::new(&g, rot).unwrap()).unwrap()
    }

    #[test]
    fn face_examples() {
        let k4 = PlaneGraph::embed(&Graph::complete(4)).unwrap();
        assert_eq!((k4.faces().f3(), k4.faces().f4(), k4.faces().f5()), (4, 0, 0));
        let bowtie = PlaneGraph::embed(&named::bowtie()).unwrap();
        assert_eq!(degrees(&bowtie), vec![3, 3, 6]);
        let w4 = PlaneGraph::embed(&named::wheel4()).unwrap();
        assert_eq!(degrees(&w4), vec![3, 3, 3, 3, 4]);
        let p3 = PlaneGraph::embed(&Graph::path(3)).unwrap();
        assert_eq!(degrees(&p3), vec![4]);
        let k1 = PlaneGraph::embed(&Graph::empty(1)).unwrap();
        assert_eq!(degrees(&k1), vec![0]);
    }

    #[test]
    fn dual_examples() {
        let c6 = PlaneGraph::embed(&Graph::cycle(6)).unwrap();
        let d = c6.dual();
        assert_eq!(d.face_count(), 2);
        assert!(d.edges().iter().all(|&(a, b)| a != b));
        assert_eq!(d.degree(0), 6);
        let k4 = PlaneGraph::embed(&Graph::complete(4)).unwrap();
        let d = k4.dual();
        let mut pairs: Vec<_> = d.edges().iter().map(|&(a, b)| crate::graph::ordered(a, b)).collect();
        pairs.sort_unstable();
        pairs.dedup();
        assert_eq!(pairs.len(), 6);
        let bowtie = PlaneGraph::embed(&named::bowtie()).unwrap();
        let d = bowtie.dual();
        let mut degs: Vec<usize> = (0..3).map(|f| d.degree(f)).collect();
        degs.sort_unstable();
        assert_eq!(degs, vec![3, 3, 6]);
    }

    #[test]
    fn island_examples() {
        let w4 = PlaneGraph::embed(&named::wheel4()).unwrap();
        let isl = w4.islands(4);
        assert_eq!(isl.islands.len(), 1);
        assert!(isl.islands[0].bad);
        assert_eq!(isl.gamma, 1);
        for f in 0..w4.faces().len() {
            if w4.faces().face(f).degree() == 3 {
                assert_eq!(isl.gamma_of_face[f], vec![0]);
            }
        }

        let sq = square_pendants_plane();
        let isl = sq.islands(4);
        assert_eq!(isl.islands.len(), 2);
        assert_eq!(isl.gamma, 1);
        let bad = isl.bad_islands().next().unwrap();
        assert_eq!(sq.faces().face(isl.islands[bad].faces[0]).degree(), 4);

        let c6 = PlaneGraph::embed(&Graph::cycle(6)).unwrap();
        let isl = c6.islands(5);
        assert_eq!(isl.islands.len(), 1);
        assert!(!isl.islands[0].acyclic);
        assert_eq!(isl.gamma, 0);
    }

    #[test]
    fn big_face_proposition() {
        let k4 = PlaneGraph::embed(&Graph::complete(4)).unwrap();
        assert!(matches!(every_edge_on_big_face(k4.graph(), k4.faces()), Err(Error::PreconditionC4)));
        let bowtie = PlaneGraph::embed(&named::bowtie()).unwrap();
        assert_eq!(every_edge_on_big_face(bowtie.graph(), bowtie.faces()).unwrap(), None);
        let c6 = PlaneGraph::embed(&Graph::cycle(6)).unwrap();
        assert_eq!(every_edge_on_big_face(c6.graph(), c6.faces()).unwrap(), None);
    }

    #[test]
    fn gamma_of_vertex_on_wheel() {
        let w4 = PlaneGraph::embed(&named::wheel4()).unwrap();
        let isl = w4.islands(4);
        assert_eq!(isl.gamma_of_vertex(w4.faces(), 0), vec![0]);
        assert!(isl.gamma_of_vertex(w4.faces(), 4).is_empty());
    }
}
