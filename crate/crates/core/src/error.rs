use thiserror::Error;

/// Errors reported for malformed inputs or violated preconditions.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("vertex {vertex} is out of range for a graph with {n} vertices")]
    VertexOutOfRange { vertex: usize, n: usize },

    #[error("self-loop on vertex {0}")]
    SelfLoop(usize),

    #[error("graph is disconnected: vertices {0} and {1} lie in different components")]
    Disconnected(usize, usize),

    #[error("vertex {0} is not a cutpoint")]
    NotCutpoint(usize),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("procedure precondition failed: {0}")]
    Precondition(String),

    #[error("graph has {n} vertices, above the oracle cap of {cap}")]
    TooLarge { n: usize, cap: usize },

    #[error("internal invariant violated: {0}")]
    Internal(String),

    #[error("parse error on line {line}: {message}")]
    Parse { line: usize, message: String },
}

pub type Result<T> = std::result::Result<T, Error>;
