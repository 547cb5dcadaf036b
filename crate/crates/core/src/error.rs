use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("grid size {0} must be a power of two and at least 8")]
    InvalidGridSize(usize),

    #[error("sample {index} is not finite")]
    NonFinite { index: usize },

    #[error("expected {expected} values, got {actual}")]
    LengthMismatch { expected: usize, actual: usize },

    #[error("a grid of {n} points cannot carry frequencies up to {max_freq}")]
    GridTooSmall { n: usize, max_freq: usize },

    #[error("coefficients are not Hermitian at k = {k} (deviation {deviation:e})")]
    NotHermitian { k: i64, deviation: f64 },

    #[error("lift is not strictly increasing at index {index}")]
    NotIncreasing { index: usize },

    #[error("lift does not close: lift[n] - lift[0] = {rise}, expected 2π")]
    NotPeriodic { rise: f64 },

    #[error("unknown function kind `{0}`")]
    UnknownKind(String),

    #[error("malformed function spec: {0}")]
    InvalidSpec(String),

    #[error("invalid epsilon rule: {0}")]
    InvalidEpsilonRule(String),

    #[error("scale {value} is below the grid resolution {spacing}")]
    BelowResolution { value: f64, spacing: f64 },

    #[error("complex samples given where real samples are required")]
    ComplexInput,

    #[error("invalid solver parameters: {0}")]
    InvalidParams(String),

    #[error("monotone repair failed: {0}")]
    RepairFailed(String),

    #[error("image of G(z) = z + {beta} z^2 is not star-like (min Re zG'/G = {min_value:e})")]
    NotStarlike { beta: f64, min_value: f64 },

    #[error("invalid config: {0}")]
    Config(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),

    #[error(transparent)]
    Csv(#[from] csv::Error),
}
