use thiserror::Error;

use crate::scalar::ParseRationalError;

/// Errors reported by the library.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("points of the tropical projective torus need at least two coordinates, got {0}")]
    DimensionTooSmall(usize),

    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("a sample set needs at least one point")]
    EmptySample,

    #[error("ball radius must be nonnegative")]
    NegativeRadius,

    #[error("the polytrope is empty (positive cycle in the constraint matrix)")]
    EmptyPolytrope,

    #[error("the polytrope is unbounded")]
    Unbounded,

    #[error("the point is not a global minimizer: no certificate of optimality exists")]
    NotOptimal,

    #[error("budget exceeded: {0}")]
    BudgetExceeded(String),

    #[error("malformed certificate: {0}")]
    MalformedCertificate(String),

    #[error("index {index} out of range for {len} items")]
    IndexOutOfRange { index: usize, len: usize },

    #[error(transparent)]
    Parse(#[from] ParseRationalError),

    #[error("invalid document: {0}")]
    Format(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

pub(crate) fn check_dims(expected: usize, found: usize) -> Result<()> {
    if expected == found {
        Ok(())
    } else {
        Err(Error::DimensionMismatch { expected, found })
    }
}
