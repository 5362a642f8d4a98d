use thiserror::Error;

/// Errors raised by the library. Verification failures are not errors; they
/// are reported through the oracle and stretch reports.
#[derive(Debug, Error)]
pub enum Error {
    #[error("degenerate direction: points {0:?} and {1:?} coincide")]
    DegenerateDirection((f64, f64), (f64, f64)),

    #[error("non-finite coordinate at index {index}: ({x}, {y})")]
    NonFinite { index: usize, x: f64, y: f64 },

    #[error("duplicate points: index {first} and index {second} both at ({x}, {y})")]
    DuplicatePoint {
        first: usize,
        second: usize,
        x: f64,
        y: f64,
    },

    #[error("cone count must be at least 2, got {0}")]
    InvalidConeCount(usize),

    #[error("vertex index {index} out of range for {len} points")]
    IndexOutOfRange { index: usize, len: usize },

    #[error("stretch needs at least 2 points, got {0}")]
    TooFewPoints(usize),

    #[error("brute-force oracle is capped at {cap} points, got {n}")]
    OracleSizeCap { n: usize, cap: usize },

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("construction self-validation failed: {0}")]
    SelfValidation(String),

    #[error("malformed input: {0}")]
    Input(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),

    #[error(transparent)]
    Csv(#[from] csv::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
