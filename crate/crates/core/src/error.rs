use thiserror::Error;

/// Errors raised by graph construction, the solvers and the generators.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("vertex {vertex} out of range for graph with {n} vertices")]
    VertexOutOfRange { vertex: usize, n: usize },

    #[error("self-loop on vertex {0}")]
    SelfLoop(usize),

    #[error("duplicate edge ({0}, {1})")]
    DuplicateEdge(usize, usize),

    #[error("distance parameter d={0} must be at least 2")]
    DistanceTooSmall(usize),

    #[error("d={d} is not supported here: {reason}")]
    UnsupportedDistance { d: usize, reason: &'static str },

    #[error("graph is not bipartite")]
    NotBipartite,

    #[error("invalid bipartition: {0}")]
    InvalidBipartition(String),

    #[error("instance has {n} vertices, exceeding the oracle cap of {cap}")]
    NodeCapExceeded { n: usize, cap: usize },

    #[error("approximation ratio {0} is out of range (must be a rational >= 1)")]
    RhoOutOfRange(String),

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("invalid tree decomposition: {0}")]
    InvalidDecomposition(String),

    #[error("malformed input: {0}")]
    Malformed(String),

    #[error("line {line}: {source}")]
    AtLine {
        line: usize,
        #[source]
        source: Box<Error>,
    },
}

pub type Result<T> = std::result::Result<T, Error>;
