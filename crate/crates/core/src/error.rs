use thiserror::Error;

use crate::catalog::Indecomposable;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("invalid parameter p = {0} (need p >= 2)")]
    InvalidParams(i64),

    #[error("invalid label: {0}")]
    InvalidLabel(String),

    #[error("unsupported: {0}")]
    Unsupported(String),

    #[error("negative multiplicity for {label} ({have} - {take})")]
    NegativeMultiplicity {
        label: Indecomposable,
        have: u64,
        take: u64,
    },

    #[error("series did not converge: {0}")]
    NonConvergent(String),

    #[error("ill-conditioned basis matching (condition {condition:.3e}, spread {spread:.3e})")]
    IllConditioned { condition: f64, spread: f64 },
}
