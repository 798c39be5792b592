//! Plane embeddings, faces, the dual multigraph and island decompositions.

mod embed;
mod faces;

pub use embed::{is_planar, planarity_embed, Embedding, KuratowskiKind, NonplanarWitness};
pub use faces::{every_edge_on_big_face, DualMultigraph, Face, FaceSet, Island, IslandDecomposition};

use crate::graph::Graph;
use crate::{Error, Result};

/// Cyclic order of neighbors around each vertex.
///
/// Face tracing convention: the dart following `u -> v` is `v -> w`, where
/// `w` comes right after `u` in the rotation at `v`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RotationSystem {
    rotations: Vec<Vec<usize>>,
    /// `position[v][i]` is the index in `rotations[v]` of the `i`-th
    /// smallest neighbor of `v`.
    position: Vec<Vec<usize>>,
    sorted: Vec<Vec<usize>>,
}

impl RotationSystem {
    /// Validates that every list is a permutation of the vertex's neighbors.
    pub fn new(g: &Graph, rotations: Vec<Vec<usize>>) -> Result<Self> {
        if rotations.len() != g.n() {
            return Err(Error::InconsistentRotation(format!(
                "{} rotation lists for {} vertices",
                rotations.len(),
                g.n()
            )));
        }
        let mut position = Vec::with_capacity(g.n());
        for (v, rot) in rotations.iter().enumerate() {
            let nbrs = g.neighbors(v);
            let mut pos = vec![usize::MAX; nbrs.len()];
            if rot.len() != nbrs.len() {
                return Err(Error::InconsistentRotation(format!(
                    "vertex {v} lists {} neighbors, has {}",
                    rot.len(),
                    nbrs.len()
                )));
            }
            for (i, &u) in rot.iter().enumerate() {
                let Ok(j) = nbrs.binary_search(&u) else {
                    return Err(Error::InconsistentRotation(format!("{u} is not a neighbor of {v}")));
                };
                if pos[j] != usize::MAX {
                    return Err(Error::InconsistentRotation(format!("{u} repeated around {v}")));
                }
                pos[j] = i;
            }
            position.push(pos);
        }
        let sorted = (0..g.n()).map(|v| g.neighbors(v).to_vec()).collect();
        Ok(RotationSystem { rotations, position, sorted })
    }

    pub fn n(&self) -> usize {
        self.rotations.len()
    }

    pub fn rotations(&self) -> &[Vec<usize>] {
        &self.rotations
    }

    pub fn rotation(&self, v: usize) -> &[usize] {
        &self.rotations[v]
    }

    /// The neighbor after `u` in the rotation at `v`.
    pub fn successor(&self, v: usize, u: usize) -> usize {
        let j = self.sorted[v].binary_search(&u).expect("u adjacent to v");
        let rot = &self.rotations[v];
        rot[(self.position[v][j] + 1) % rot.len()]
    }

    /// The embedding induced on the subgraph spanned by `keep` (relabeled
    /// as in [`Graph::induced`]).
    pub fn induced(&self, g: &Graph, keep: &[usize]) -> (Graph, RotationSystem) {
        let (sub, _) = g.induced(keep);
        let mut new_id = vec![usize::MAX; g.n()];
        for (i, &v) in keep.iter().enumerate() {
            new_id[v] = i;
        }
        let rotations = keep
            .iter()
            .map(|&v| self.rotations[v].iter().filter(|&&u| new_id[u] != usize::MAX).map(|&u| new_id[u]).collect())
            .collect();
        let rs = RotationSystem::new(&sub, rotations).expect("restriction of a valid rotation");
        (sub, rs)
    }
}

/// A graph with a fixed genus-0 rotation system and its traced faces.
#[derive(Clone, Debug)]
pub struct PlaneGraph {
    graph: Graph,
    rotation: RotationSystem,
    faces: FaceSet,
}

impl PlaneGraph {
    /// Embeds `g` with [`planarity_embed`].
    pub fn embed(g: &Graph) -> Result<Self> {
        match planarity_embed(g) {
            Embedding::Planar(rs) => Self::with_rotation(g.clone(), rs),
            Embedding::Nonplanar(_) => Err(Error::NotPlanar),
        }
    }

    /// Uses a caller-supplied rotation; it must be a genus-0 embedding of
    /// every component.
    pub fn with_rotation(graph: Graph, rotation: RotationSystem) -> Result<Self> {
        let faces = FaceSet::trace(&graph, &rotation)?;
        if !faces.satisfies_euler(&graph) {
            return Err(Error::InconsistentRotation("rotation system is not a plane embedding".into()));
        }
        Ok(PlaneGraph { graph, rotation, faces })
    }

    pub fn graph(&self) -> &Graph {
        &self.graph
    }

    pub fn rotation(&self) -> &RotationSystem {
        &self.rotation
    }

    pub fn faces(&self) -> &FaceSet {
        &self.faces
    }

    pub fn dual(&self) -> DualMultigraph {
        DualMultigraph::new(&self.graph, &self.faces)
    }

    pub fn islands(&self, r: usize) -> IslandDecomposition {
        IslandDecomposition::new(&self.dual(), &self.faces, r)
    }

    /// The sub-embedding on `keep`.
    pub fn induced(&self, keep: &[usize]) -> PlaneGraph {
        let (g, rs) = self.rotation.induced(&self.graph, keep);
        PlaneGraph::with_rotation(g, rs).expect("sub-embeddings of plane graphs are plane")
    }
}
