use thiserror::Error;

/// Errors reported by the library.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("parse error at position {position}: {message}")]
    Parse { position: usize, message: String },
    #[error("invalid algebra: {0}")]
    InvalidAlgebra(String),
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("enumeration limit exceeded: {what} needs {needed} items, limit is {limit}")]
    LimitExceeded {
        what: String,
        needed: u128,
        limit: u128,
    },
    #[error("not applicable: {0}")]
    NotApplicable(String),
    #[error("consistency check failed: {0}")]
    Consistency(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    pub fn parse(position: usize, message: impl Into<String>) -> Self {
        Error::Parse {
            position,
            message: message.into(),
        }
    }

    pub fn precondition(message: impl Into<String>) -> Self {
        Error::Precondition(message.into())
    }
}
