//! Error type shared across the crate.
//!
//! Two failure classes matter to callers: invalid inputs (bad parameters,
//! mismatched shapes, guard violations) and numerical failures (quadrature or
//! eigensolver non-convergence, growth caps). The CLI maps them to exit codes
//! 2 and 3 respectively.

use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    /// Precondition or configuration violation.
    #[error("invalid input: {0}")]
    InvalidInput(String),

    /// A numerical procedure failed to reach its target accuracy.
    #[error("numerical failure: {0}")]
    Numerical(String),

    #[error("i/o error: {0}")]
    Io(#[from] std::io::Error),

    #[error("json error: {0}")]
    Json(#[from] serde_json::Error),
}

impl Error {
    pub fn invalid(msg: impl Into<String>) -> Self {
        Error::InvalidInput(msg.into())
    }

    pub fn numerical(msg: impl Into<String>) -> Self {
        Error::Numerical(msg.into())
    }

    /// Process exit code for the CLI: 2 for usage/validation, 3 for numerics.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::Numerical(_) => 3,
            _ => 2,
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
