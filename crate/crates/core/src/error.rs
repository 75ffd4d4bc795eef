use thiserror::Error;

use crate::bits::BitString;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("invalid gate: {0}")]
    InvalidGate(String),

    /// The all-zeros activation vector cannot be served by the direct generators.
    #[error("activation vector is all zeros; use the zero-polarity generator")]
    UseZeroPolarityGenerator,

    #[error("circuit width {width} exceeds the limit of {limit} lines")]
    ResourceLimit { width: usize, limit: usize },

    #[error("unsupported circuit shape: {0}")]
    UnsupportedShape(String),

    #[error("non-classical output for input {input}")]
    NonClassical { input: BitString },

    #[error("line {line}: invalid gate: {message}")]
    InvalidGateAt { line: usize, message: String },

    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },
}

impl Error {
    pub(crate) fn invalid_argument(msg: impl Into<String>) -> Self {
        Error::InvalidArgument(msg.into())
    }
}
