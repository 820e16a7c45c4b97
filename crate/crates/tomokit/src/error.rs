use thiserror::Error;

/// Error type shared by the whole crate.
#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid grid bounds: lower {lower} must be below upper {upper}")]
    InvalidBounds { lower: f64, upper: f64 },

    #[error("invalid grid count {count}: need at least {min}")]
    InvalidCount { count: usize, min: usize },

    #[error("parameter out of range: {0}")]
    OutOfRange(String),

    #[error("direction (mu, nu) = ({mu}, {nu}) is undefined (both components below 1e-6)")]
    UndefinedDirection { mu: f64, nu: f64 },

    #[error("characteristic function does not decay: {0}")]
    NonDecaying(String),

    #[error("grid mismatch: {0}")]
    GridMismatch(String),

    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    #[error("matrix is not a valid state: {0}")]
    InvalidState(String),

    #[error("evaluation point out of range: {0}")]
    EvaluationOutOfRange(String),

    #[error("support violation: {0}")]
    SupportViolation(String),

    #[error("parameter constraint violated: {0}")]
    ConstraintViolation(String),

    #[error("numerical check failed: {0}")]
    NumericalFailure(String),

    #[error("malformed input: {0}")]
    Parse(String),

    #[error("io error: {0}")]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
