use thiserror::Error;

use crate::constructive::ProofGapWitness;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("edge ({0}, {1}) is a loop")]
    InvalidEdge(usize, usize),
    #[error("vertex {vertex} out of range for graph on {n} vertices")]
    InvalidVertex { vertex: usize, n: usize },
    #[error("backbone edge ({0}, {1}) is not an edge of the graph")]
    BackboneNotSubgraph(usize, usize),
    #[error("backbone is not a linear forest")]
    BackboneNotLinearForest,
    #[error("inconsistent rotation system: {0}")]
    InconsistentRotation(String),
    #[error("graph is not planar")]
    NotPlanar,
    #[error("precondition violated: graph contains a 4-cycle")]
    PreconditionC4,
    #[error("precondition violated: {0}")]
    PreconditionViolated(String),
    #[error("coloring leaves vertex {0} unassigned")]
    PartialColoring(usize),
    #[error("vertex {0} is already colored")]
    AlreadyColored(usize),
    #[error("coloring has {found} entries, graph has {expected} vertices")]
    ColoringLength { expected: usize, found: usize },
    #[error("color {color} outside 1..={k}")]
    ColorOutOfRange { color: u32, k: u32 },
    #[error("instance with {n} vertices exceeds the cap of {cap}")]
    InstanceTooLarge { n: usize, cap: usize },
    #[error("color count {0} unsupported (allowed 1..=63)")]
    UnsupportedColorCount(u32),
    #[error("parameter q = {0} must be positive")]
    InvalidDistance(u32),
    #[error("no coloring found below the cut-off k = {0}")]
    SearchCutOff(u32),
    #[error("given vertex sequence is not a Hamiltonian path")]
    NotHamiltonianPath,
    #[error("not reducible: {0}")]
    NotReducible(String),
    #[error("instance is not in the class of theorem {0}")]
    NotInClass(u8),
    #[error("proof gap: {0}")]
    ProofGap(Box<ProofGapWitness>),
    #[error("enumeration budget exceeded: {0}")]
    BudgetExceeded(String),
    #[error("gave up after {0} attempts")]
    GiveUp(usize),
    #[error("backbone kind unavailable: {0}")]
    KindUnavailable(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
}
