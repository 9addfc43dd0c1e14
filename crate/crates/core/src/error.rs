use crate::graph::VertexId;
use thiserror::Error;

/// Errors raised across the crate.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("vertex count must be at least 1")]
    EmptyVertexSet,
    #[error("vertex {v} out of range for n = {n}")]
    VertexOutOfRange { v: VertexId, n: usize },
    #[error("self-loop at vertex {0}")]
    SelfLoop(VertexId),
    #[error("edge ({0}, {1}) already present")]
    DuplicateEdge(VertexId, VertexId),
    #[error("edge ({0}, {1}) not present")]
    MissingEdge(VertexId, VertexId),
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("invalid subgraph system: {0}")]
    InvalidSystem(String),
    #[error("operation not supported: {0}")]
    Unsupported(String),
    #[error("internal assertion failed: {0}")]
    Assertion(String),
    #[error("matching violation after update {step}: {detail}")]
    Violation { step: usize, detail: String },
    #[error("parse error on line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error("i/o error: {0}")]
    Io(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}
