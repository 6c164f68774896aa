use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid label dimensions {width}x{height}: both must be positive and finite")]
    InvalidDims { width: f64, height: f64 },

    #[error("invalid viewport: {0}")]
    InvalidViewport(String),

    #[error("invalid option: {0}")]
    InvalidOptions(String),

    #[error("xml error at line {line}, column {column}: {message}")]
    Xml { line: u32, column: u32, message: String },

    #[error("point record {index} (rank {rank}): {message}")]
    Record { index: usize, rank: String, message: String },

    #[error("malformed input: {0}")]
    Format(String),

    #[error("{0}")]
    MissingDataset(String),

    #[error("malformed trellis table, line {line}: {message}")]
    Table { line: usize, message: String },

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}
