use thiserror::Error;

/// Crate-wide error type.
#[derive(Debug, Error)]
pub enum Error {
    #[error("index {idx} out of range for a space of {n} solutions")]
    IndexOutOfRange { idx: usize, n: usize },

    #[error("invalid solution: {0}")]
    InvalidSolution(String),

    #[error("distance {h} out of range (diameter {diameter})")]
    DistanceOutOfRange { h: usize, diameter: usize },

    #[error("solutions belong to different spaces")]
    SpecMismatch,

    #[error("invalid configuration: {0}")]
    Config(String),

    #[error("numeric failure: {0}")]
    Numeric(String),

    #[error("unsupported: {0}")]
    Unsupported(String),

    #[error("unknown builtin instance `{name}`; available: {available}")]
    UnknownInstance { name: String, available: String },
}

pub type Result<T> = std::result::Result<T, Error>;
