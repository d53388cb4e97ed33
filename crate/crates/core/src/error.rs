//! Error type shared across the crate.

use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("probability vector must be non-empty")]
    EmptyVector,

    #[error("negative probability at index {index}: {value}")]
    NegativeEntry { index: usize, value: f64 },

    #[error("entries sum to {sum}, expected 1 within {tol}")]
    NotNormalized { sum: f64, tol: f64 },

    #[error("length mismatch: {left} vs {right}")]
    LengthMismatch { left: usize, right: usize },

    #[error("infinite divergence: p[{index}] = {p} > 0 while q[{index}] = 0")]
    InfiniteDivergence { index: usize, p: f64 },

    #[error("conditional table must be strictly positive; entry ({row}, {col}) = {value}")]
    PositivityViolation { row: usize, col: usize, value: f64 },

    #[error("gradient singular: zero probability at index {index}")]
    GradientSingularity { index: usize },

    #[error("non-finite value in {0}")]
    NonFinite(&'static str),

    #[error("invalid configuration: {0}")]
    InvalidConfig(String),

    #[error("iteration trace has no snapshots")]
    TraceIncomplete,

    #[error("no records to aggregate")]
    EmptyRecords,

    #[error(transparent)]
    Json(#[from] serde_json::Error),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
