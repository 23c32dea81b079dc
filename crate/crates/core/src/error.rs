use thiserror::Error;

/// Errors raised by graph construction, decomposition and solving.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("endpoint {endpoint} out of range for a graph with {n} vertices")]
    EndpointOutOfRange { endpoint: usize, n: usize },
    #[error("vertex {vertex} out of range for a graph with {n} vertices")]
    VertexOutOfRange { vertex: usize, n: usize },
    #[error("graph contains a loop at vertex {0}")]
    Loop(usize),
    #[error("graph contains parallel edges between {0} and {1}")]
    ParallelEdge(usize, usize),
    #[error("invalid rotation system: {0}")]
    InvalidRotation(String),
    #[error("embedding is not planar (euler genus {0})")]
    NotPlanar(usize),
    #[error("graph is disconnected")]
    Disconnected,
    #[error("vertex set does not induce a connected subgraph")]
    SetNotConnected,
    #[error("face {face} has only {len} darts")]
    DegenerateFace { face: usize, len: usize },
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("invalid tree decomposition: {0}")]
    InvalidDecomposition(String),
    #[error("contracting the cut graph left euler genus {0}")]
    GenusNotReduced(usize),
    #[error("state space too large: {0}")]
    StateSpace(String),
    #[error("oracle budget exceeded: {0}")]
    BudgetExceeded(String),
    #[error("parse error on line {line}: {msg}")]
    Parse { line: usize, msg: String },
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
