use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("parse error: {0}")]
    Parse(String),

    #[error("inexact division: {0}")]
    InexactDivision(String),

    #[error("strand count mismatch: {0} vs {1}")]
    StrandMismatch(usize, usize),

    #[error("index {index} out of range for {bound}")]
    IndexOutOfRange { index: usize, bound: usize },

    #[error("invalid diagram: {0}")]
    InvalidDiagram(String),

    #[error("profile mismatch: {0}")]
    ProfileMismatch(String),

    #[error("diagram cannot be sliced: {0}")]
    Unsliceable(String),

    #[error("unsupported input: {0}")]
    Unsupported(String),

    #[error("internal consistency failure: {0}")]
    Internal(String),

    #[error("io error: {0}")]
    Io(String),
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}

pub type Result<T> = std::result::Result<T, Error>;
