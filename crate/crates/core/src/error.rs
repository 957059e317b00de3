use thiserror::Error;

/// Errors raised across the crate.
///
/// The variants line up with the CLI exit codes: `Verification` is a
/// mathematical failure (exit 1), `InvalidInput` is malformed input (exit 2),
/// `Capacity` is an enumeration or size bound (exit 3).
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("invalid input: {0}")]
    InvalidInput(String),
    #[error("not invertible: {0}")]
    NotInvertible(String),
    #[error("capacity exceeded: {0}")]
    Capacity(String),
    #[error("verification failed: {0}")]
    Verification(String),
    #[error("internal error: {0}")]
    Internal(String),
}

impl Error {
    pub fn invalid(msg: impl Into<String>) -> Self {
        Error::InvalidInput(msg.into())
    }

    pub fn capacity(msg: impl Into<String>) -> Self {
        Error::Capacity(msg.into())
    }

    pub fn verification(msg: impl Into<String>) -> Self {
        Error::Verification(msg.into())
    }

    pub fn internal(msg: impl Into<String>) -> Self {
        Error::Internal(msg.into())
    }

    /// Process exit code used by the command-line front end.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::Verification(_) | Error::Internal(_) => 1,
            Error::InvalidInput(_) | Error::NotInvertible(_) => 2,
            Error::Capacity(_) => 3,
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
