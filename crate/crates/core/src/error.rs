//! Crate-wide error type.

use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    /// Malformed input line, with its 1-based line number.
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },

    /// An edge-list source with no data lines.
    #[error("edge list contains no data lines")]
    EmptyEdgeList,

    /// A parameter outside its documented domain.
    #[error("{0}")]
    InvalidArgument(String),

    /// Spread simulation requires a connected graph.
    #[error("graph is not connected")]
    NotConnected,

    /// Two matrices that must be shape-congruent are not.
    #[error("shape mismatch: {0}")]
    ShapeMismatch(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn invalid(msg: impl Into<String>) -> Error {
    Error::InvalidArgument(msg.into())
}
