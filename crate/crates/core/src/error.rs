use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("expected a positive odd integer, got {0}")]
    NotOdd(u64),
    #[error("t must be positive")]
    Zero,
    #[error("block length {0} exceeds the supported maximum of 2^32 - 1")]
    BlockTooLong(u64),
    #[error("block length must be at least 1")]
    EmptyBlock,
    #[error("block expansion must have an even number of entries, got {0}")]
    OddLength(usize),
    #[error("block expansion {0} does not represent an integer")]
    NotAnInteger(String),
    #[error("integer does not fit in 64 bits")]
    Overflow,
    #[error("sequences have different lengths ({0} vs {1})")]
    LengthMismatch(usize, usize),
    #[error("{what} is limited to {max}, got {got}")]
    TooLarge {
        what: &'static str,
        max: u64,
        got: u64,
    },
    #[error("index {index} out of range 0..={max}")]
    OutOfRange { index: usize, max: usize },
    #[error("word must have even positive length, got {0}")]
    BadWord(usize),
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("i/o error: {0}")]
    Io(String),
    #[error("cannot resume: {0}")]
    Resume(String),
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}

impl From<csv::Error> for Error {
    fn from(e: csv::Error) -> Self {
        Error::Io(e.to_string())
    }
}

impl From<serde_json::Error> for Error {
    fn from(e: serde_json::Error) -> Self {
        Error::Io(e.to_string())
    }
}
