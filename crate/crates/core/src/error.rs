//! Crate-wide error type.

use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("invalid state: {0}")]
    InvalidState(String),

    #[error("invalid sequence: {0}")]
    InvalidSequence(String),

    #[error("count distribution truncated: tail mass {tail:.3e} exceeds {tol:.1e} at n_max {n_max}")]
    Truncation { tail: f64, tol: f64, n_max: usize },

    #[error("non-identifiable: {0}")]
    NonIdentifiable(String),

    #[error("singular system: {0}")]
    Singular(String),

    #[error("no convergence after {iterations} iterations ({context})")]
    NoConvergence { iterations: usize, context: String },

    #[error("dataset: {0}")]
    Dataset(String),

    #[error("calibration: {0}")]
    Calibration(String),

    #[error("io: {0}")]
    Io(#[from] std::io::Error),

    #[error("json: {0}")]
    Json(#[from] serde_json::Error),
}
