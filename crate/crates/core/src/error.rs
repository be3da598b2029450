use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GraphError {
    #[error("graph has {n} vertices, at most {max} are supported")]
    TooManyVertices { n: usize, max: usize },
    #[error("vertex {vertex} out of range for a graph on {n} vertices")]
    VertexOutOfRange { vertex: usize, n: usize },
    #[error("self-loop at vertex {vertex}")]
    SelfLoop { vertex: usize },
    #[error("duplicate edge {u}-{v}")]
    DuplicateEdge { u: usize, v: usize },
    #[error("adjacency is not symmetric at {u}-{v}")]
    AsymmetricAdjacency { u: usize, v: usize },
    #[error("invalid parameters: {0}")]
    InvalidParameters(String),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SequenceError {
    #[error("degree sequence is not non-increasing at position {position}")]
    NotSorted { position: usize },
    #[error("degree {degree} at reference vertex is below 3")]
    DegreeTooSmall { degree: u32 },
    #[error("sequence has no connected realization")]
    NotConnectedRealizable,
    #[error("inconsistent constraint: {0}")]
    InconsistentConstraint(String),
    #[error("connectivity repair exceeded {limit} swaps")]
    RepairLimitExceeded { limit: usize },
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TransformError {
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error("source vertex {vertex} has degree {degree}, at least 3 is required")]
    DegreeTooSmall { vertex: usize, degree: u32 },
    #[error("graph has {pendants} pendant vertices, at least 2 are required")]
    TooFewPendants { pendants: usize },
    #[error("target vertex {vertex} has degree {degree}, it must be pendant")]
    TargetNotPendant { vertex: usize, degree: u32 },
    #[error("target vertex {vertex} lies inside the moved subtree")]
    TargetInsideSubtree { vertex: usize },
    #[error("vertex set is not a hanging tree at {vertex}")]
    NotAHangingTree { vertex: usize },
    #[error("graph is not connected")]
    Disconnected,
}

/// Requested size is beyond what an exhaustive routine supports.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("{what}: n = {n} exceeds the supported limit {limit}")]
pub struct LimitError {
    pub what: &'static str,
    pub n: usize,
    pub limit: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Graph6Error {
    #[error("empty graph6 record")]
    Empty,
    #[error("bad header byte {byte:#04x} at position 0")]
    BadHeader { byte: u8 },
    #[error("byte {byte:#04x} at position {position} is outside the graph6 range")]
    BadByte { position: usize, byte: u8 },
    #[error("truncated adjacency data: expected {expected} bytes, found {found}")]
    Truncated { expected: usize, found: usize },
    #[error("trailing data after position {position}")]
    TrailingData { position: usize },
    #[error("non-zero padding bits in final byte at position {position}")]
    NonZeroPadding { position: usize },
    #[error(transparent)]
    Graph(#[from] GraphError),
}
