//! Error type shared by every module.

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum MoyError {
    /// Malformed diagram text.
    #[error("syntax error at line {line}: {message}")]
    Syntax { line: usize, message: String },

    /// A well-formed slice word that violates a diagram rule.
    #[error("validation error at slice {slice} ({generator}): {rule}")]
    Validation {
        slice: usize,
        generator: String,
        rule: String,
    },

    /// An operation was called outside its domain.
    #[error("precondition violated: {0}")]
    Precondition(String),

    /// A skein recursion exceeded its node budget.
    #[error("node budget of {limit} exceeded")]
    Budget { limit: u64 },

    /// An internal consistency check failed.
    #[error("internal error: {0}")]
    Internal(String),
}

impl MoyError {
    /// Process exit code used by the command-line front end.
    pub fn exit_code(&self) -> i32 {
        match self {
            MoyError::Syntax { .. } | MoyError::Validation { .. } => 1,
            MoyError::Precondition(_) | MoyError::Internal(_) => 2,
            MoyError::Budget { .. } => 3,
        }
    }
}

pub type Result<T> = std::result::Result<T, MoyError>;
