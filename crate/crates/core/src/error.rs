use thiserror::Error;

use crate::report::Report;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("input error: {0}")]
    Input(String),

    #[error("parse error: {0}")]
    Parse(String),

    #[error("dimension mismatch: {0}")]
    Dimension(String),

    #[error("field mismatch: {left} vs {right}")]
    FieldMismatch { left: crate::Field, right: crate::Field },

    #[error("map is not invertible (rank {rank} of {size})")]
    NotInvertible { rank: usize, size: usize },

    #[error("linear system is inconsistent")]
    Inconsistent,

    #[error("map is not convolution invertible: {0}")]
    NotConvolutionInvertible(String),

    /// Hypotheses of a construction did not hold; the construction was refused.
    #[error("hypotheses failed:\n{0}")]
    HypothesesFailed(Box<Report>),

    /// A conclusion check failed although its hypotheses passed.
    #[error("internal consistency failure in {stage}:\n{report}")]
    Internal { stage: String, report: Box<Report> },
}
