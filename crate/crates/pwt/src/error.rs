use thiserror::Error;

/// Crate-wide error type.
#[derive(Debug, Error)]
pub enum Error {
    /// A document could not be parsed. Carries a 1-based line number.
    #[error("parse error at line {line}: {message}")]
    Parse { line: usize, message: String },

    /// Input data violates a structural invariant.
    #[error("invariant violation: {0}")]
    Invariant(String),

    /// An operation was asked to work on data it cannot accept.
    #[error("{0}")]
    Unsupported(String),

    /// Enumeration guard tripped.
    #[error("instance too large for exhaustive search: {items} items (limit {limit})")]
    TooLarge { items: usize, limit: usize },

    #[error("i/o error: {0}")]
    Io(#[from] std::io::Error),
}

impl Error {
    pub fn parse(line: usize, message: impl Into<String>) -> Self {
        Error::Parse { line, message: message.into() }
    }

    pub fn invariant(message: impl Into<String>) -> Self {
        Error::Invariant(message.into())
    }
}
