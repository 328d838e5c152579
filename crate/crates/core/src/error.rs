use thiserror::Error;

/// Errors produced by the library.
///
/// Node indices stored in variants are 0-based, like the rest of the API;
/// the `Display` impl prints them 1-based so messages line up with mesh
/// and numbering files.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("parse error at line {line}, offset {offset}: {message}")]
    Parse {
        line: usize,
        offset: usize,
        message: String,
    },
    #[error("asymmetric adjacency: node {} lists {} but not the reverse", .node + 1, .neighbor + 1)]
    Asymmetry { node: usize, neighbor: usize },
    #[error("node {} lists neighbor {}, outside [1, {node_count}]", .node + 1, .neighbor + 1)]
    Range {
        node: usize,
        neighbor: usize,
        node_count: usize,
    },
    #[error("node {} lists itself as a neighbor", .node + 1)]
    SelfLoop { node: usize },
    #[error("node {} lists neighbor {} more than once", .node + 1, .neighbor + 1)]
    DuplicateNeighbor { node: usize, neighbor: usize },
    #[error("node {} has no neighbors", .node + 1)]
    IsolatedNode { node: usize },
    #[error("mesh has no nodes")]
    EmptyMesh,
    #[error("mesh is not connected")]
    Disconnected,
    #[error("numbering is not a bijection on [1, N]: {0}")]
    Bijection(String),
    #[error("size mismatch: mesh has {mesh} nodes, numbering has {numbering}")]
    SizeMismatch { mesh: usize, numbering: usize },
    #[error("cannot swap node {} with itself", .0 + 1)]
    DegenerateSwap(usize),
    #[error("transposition genomes have different reference numberings")]
    ReferenceMismatch,
    #[error("individual {0} has a stale fitness value")]
    StaleFitness(usize),
    #[error("invalid mesh spec: {0}")]
    Spec(String),
    #[error("invalid configuration: {0}")]
    Config(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
