use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("dimension mismatch: expected {expected} coordinates, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("coordinate {coordinate}: level {level} outside [0, {cap}]")]
    OutOfBounds {
        coordinate: usize,
        level: i128,
        cap: u64,
    },

    #[error("coordinate {0}: capacity must be at least 1")]
    ZeroCapacity(usize),

    #[error("{what} index {index} out of range (len {len})")]
    IndexOutOfRange {
        what: &'static str,
        index: usize,
        len: usize,
    },

    #[error("DR violation witnessed at coordinate {coordinate}: {detail}")]
    DrViolation { coordinate: usize, detail: String },

    #[error("box has {points} lattice points, exceeding the enumeration limit of {limit}")]
    BoxTooLarge { points: u128, limit: u128 },

    #[error("invalid configuration: {0}")]
    Config(String),

    #[error("invalid instance: {0}")]
    Parse(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),

    #[error(transparent)]
    Csv(#[from] csv::Error),
}
