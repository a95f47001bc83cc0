use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("invalid boundary parameters: {0}")]
    InvalidParams(String),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    /// The spectral equation for node `l_hat` did not converge inside `[lo, hi]`.
    #[error(
        "spectral solver failed for node {l_hat} in bracket [{lo}, {hi}] (residual {residual:e})"
    )]
    SolverFailure {
        l_hat: usize,
        lo: f64,
        hi: f64,
        residual: f64,
    },

    #[error("singular evaluation: {0}")]
    Singular(String),

    #[error("dimension mismatch: expected {expected}, got {actual}")]
    DimensionMismatch { expected: usize, actual: usize },

    #[error("index {index} out of range (size {size})")]
    IndexOutOfRange { index: usize, size: usize },

    #[error("lattice size {requested} exceeds cap {cap}")]
    SizeCap { requested: u128, cap: usize },
}

pub type Result<T> = std::result::Result<T, Error>;
