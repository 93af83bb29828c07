use std::path::PathBuf;

use invtwist::Error;
use thiserror::Error;

/// Exit status for a run whose checks all passed.
pub const EXIT_PASS: i32 = 0;
/// Exit status for a run in which some check failed.
pub const EXIT_FAIL: i32 = 1;
/// Exit status for unreadable, malformed or oversized input.
pub const EXIT_INPUT: i32 = 2;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("cannot read {}: {source}", path.display())]
    Read { path: PathBuf, source: std::io::Error },

    #[error("cannot write {}: {source}", path.display())]
    Write { path: PathBuf, source: std::io::Error },

    #[error("{reference}: {message}")]
    Definition { reference: String, message: String },

    #[error("{0}")]
    Usage(String),

    #[error("instance too large: {what} has dimension {dim}, above the limit {limit} (raise it with --max-dim)")]
    TooLarge { what: String, dim: usize, limit: usize },

    #[error(transparent)]
    Core(#[from] Error),
}

impl CliError {
    pub fn definition(reference: &str, message: impl Into<String>) -> Self {
        CliError::Definition { reference: reference.to_string(), message: message.into() }
    }

    /// Failed hypotheses and missing inverses are verdicts about the input;
    /// everything else means the input could not be understood.
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Core(e) => match e {
                Error::HypothesesFailed(_)
                | Error::Internal { .. }
                | Error::NotConvolutionInvertible(_)
                | Error::NotInvertible { .. }
                | Error::Inconsistent => EXIT_FAIL,
                Error::Input(_) | Error::Parse(_) | Error::Dimension(_) | Error::FieldMismatch { .. } => EXIT_INPUT,
            },
            _ => EXIT_INPUT,
        }
    }
}

pub type CliResult<T> = std::result::Result<T, CliError>;
