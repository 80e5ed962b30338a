use thiserror::Error;

/// Errors raised by the library. Every variant carries a human-readable
/// message; the CLI maps variants onto exit codes.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// Input violates the shape of a well-formed object (out of range,
    /// unsorted breakpoints, constant piece, ...).
    #[error("domain error: {0}")]
    Domain(String),

    /// A hypothesis of the requested operation does not hold for the input.
    #[error("precondition failed: {0}")]
    Precondition(String),

    /// A configured resource cap (breakpoint count, orbit size) was exceeded.
    #[error("resource limit exceeded: {0}")]
    Resource(String),

    /// A search came back empty.
    #[error("not found: {0}")]
    NotFound(String),

    /// An algorithmic invariant that should be guaranteed by the hypotheses
    /// failed to hold.
    #[error("internal invariant violated: {0}")]
    InternalInvariant(String),

    #[error("parse error at line {line}: {message}")]
    Parse { line: usize, message: String },
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    pub(crate) fn domain(msg: impl Into<String>) -> Self {
        Error::Domain(msg.into())
    }

    pub(crate) fn precondition(msg: impl Into<String>) -> Self {
        Error::Precondition(msg.into())
    }
}
