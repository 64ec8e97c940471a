use thiserror::Error;

/// Errors produced while building or querying join-reachability structures.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("vertex {vertex} out of range for graph with {n} vertices")]
    VertexOutOfRange { vertex: usize, n: usize },
    #[error("vertex sets differ: {left} vs {right} vertices")]
    VertexMismatch { left: usize, right: usize },
    #[error("graph is not a {expected}: {reason}")]
    ClassViolation { expected: &'static str, reason: String },
    #[error("graph contains a cycle")]
    Cyclic,
    #[error("relation is not transitive: ({0},{1}) and ({1},{2}) hold but ({0},{2}) does not")]
    NotTransitive(usize, usize, usize),
    #[error("duplicate point ({0}, {1})")]
    DuplicatePoint(i64, i64),
    #[error("malformed rectangle: lo {lo} > hi {hi}")]
    MalformedRect { lo: i64, hi: i64 },
    #[error("query point ({0}, {1}) was not registered at build time")]
    Unregistered(i64, i64),
    #[error("{0} is not a power of two")]
    NotPowerOfTwo(usize),
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("embedding does not yield dominance labels: {0}")]
    InvalidEmbedding(String),
    #[error("parse error on line {line}: {msg}")]
    Parse { line: usize, msg: String },
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn class_err(expected: &'static str, reason: impl Into<String>) -> Error {
    Error::ClassViolation { expected, reason: reason.into() }
}
