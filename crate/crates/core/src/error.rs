use thiserror::Error;

/// Errors raised by the library.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("coefficient {0} is not strictly inside the unit disk")]
    OutOfDisk(usize),

    #[error("decay rate {0} is not in (0, 1)")]
    BadDecay(f64),

    #[error("non-finite value at position {0}")]
    NonFinite(usize),

    #[error("index {index} out of range (limit {limit})")]
    Index { index: usize, limit: usize },

    #[error("quadrature did not converge: last change {delta:e} on {grid} points")]
    NoConvergence { grid: usize, delta: f64 },

    #[error("order {0} is not supported")]
    UnsupportedOrder(usize),

    #[error("trigonometric polynomial dips to {0:e} on the verification grid")]
    NotNonnegative(f64),

    #[error("factorization residual {0:e} exceeds tolerance")]
    FactorizationUnstable(f64),

    #[error("invalid sequence spec: {0}")]
    Spec(String),

    #[error("unknown identifier `{0}`")]
    Unknown(String),
}

pub type Result<T> = std::result::Result<T, Error>;
