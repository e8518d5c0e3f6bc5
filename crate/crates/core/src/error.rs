use thiserror::Error;

/// Errors raised by the library.
#[derive(Debug, Error)]
pub enum Error {
    #[error("empty instance: at least one item is required")]
    EmptyInstance,

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("unknown algorithm `{0}`")]
    UnknownAlgorithm(String),

    #[error("invalid item {id}: {reason}")]
    InvalidItem { id: usize, reason: String },

    #[error("not a permutation of 0..{n}: {reason}")]
    InvalidPermutation { n: usize, reason: String },

    #[error("capacity {capacity} outside the admissible range {range}")]
    CapacityDomain { capacity: f64, range: &'static str },

    #[error("degenerate instance: {0}")]
    DegenerateInstance(String),

    #[error("degenerate generator: no pair with distinct buck-per-bang in {samples} draws")]
    DegenerateGenerator { samples: usize },

    #[error("dynamic-programming table too large: {cells} cells (limit {limit})")]
    TableTooLarge { cells: u128, limit: u128 },

    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("instance validation failed: {0}")]
    Validation(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
