use thiserror::Error;

/// Errors produced by the analysis library.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("singular system: the matrix is not invertible")]
    SingularSystem,

    #[error("contract violation: {0}")]
    Contract(String),

    #[error("resource limit exceeded: {what} requires {required}, limit is {limit}")]
    ResourceLimit {
        what: &'static str,
        required: u128,
        limit: u128,
    },

    #[error("parse error at row {row}, column {column}: {message}")]
    Parse {
        row: usize,
        column: usize,
        message: String,
    },
}

pub type Result<T> = std::result::Result<T, Error>;
