use thiserror::Error;

use crate::rational::Q;

/// Errors produced anywhere in the library.
#[derive(Debug, Error)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, got {got}")]
    Dimension { expected: usize, got: usize },

    #[error("contract violated: {0}")]
    Contract(String),

    #[error("polynomial is not homogeneous")]
    NotHomogeneous,

    /// A line through `x` in direction `e` carries non-real roots.
    #[error("not hyperbolic: p(te - x) has non-real roots at x = {x:?}")]
    NotHyperbolic { x: Vec<Q> },

    /// Root clusters could not be separated within the retry budget.
    #[error("eigenvalue clusters not resolved; refine below width {width}")]
    Precision { width: Q },

    #[error("search budget exceeded: {0}")]
    Budget(String),

    #[error("unsupported: {0}")]
    Unsupported(String),

    #[error("support mismatch: monomial {0:?} has no functional value")]
    SupportMismatch(Vec<u32>),

    /// Recomputed data disagrees with a shipped certificate.
    #[error("internal consistency failure: {0}")]
    Consistency(String),

    #[error("parse error: {0}")]
    Parse(String),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn check_dim(expected: usize, got: usize) -> Result<()> {
    if expected == got {
        Ok(())
    } else {
        Err(Error::Dimension { expected, got })
    }
}
