use thiserror::Error;

/// Errors raised by constructions and checkers.
///
/// `Domain` covers inputs that do not describe a valid object (an element
/// outside its algebra, a non-surjective atom map). `Precondition` covers
/// valid objects that violate an operation's entry condition.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("domain error: {0}")]
    Domain(String),
    #[error("precondition failed: {0}")]
    Precondition(String),
    #[error("dimension mismatch: expected {expected}, got {actual}")]
    Dimension { expected: usize, actual: usize },
    #[error("size limit exceeded: {0}")]
    Limit(String),
    #[error("embedding is not isometric; witness vector {witness:?}")]
    NotIsometric { witness: Vec<String> },
    #[error("parse error at {location}: {message}")]
    Parse { location: String, message: String },
    #[error("internal invariant broken: {0}")]
    Internal(String),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn domain(msg: impl Into<String>) -> Error {
    Error::Domain(msg.into())
}

pub(crate) fn precondition(msg: impl Into<String>) -> Error {
    Error::Precondition(msg.into())
}
