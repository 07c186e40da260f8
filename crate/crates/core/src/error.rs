use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("invalid sequence: {0}")]
    InvalidSequence(String),
    #[error("invalid configuration: {0}")]
    InvalidConfig(String),
    #[error("invalid interpolation points: {0}")]
    InvalidPoints(String),
    #[error("index {index} out of range for sequence of length {len}")]
    IndexOutOfRange { index: usize, len: usize },
    #[error("breakdown: {0}")]
    Breakdown(String),
    #[error("domain error: {0}")]
    Domain(String),
    #[error("{0} out of range")]
    OutOfRange(String),
    #[error("invalid model sequence spec: {0}")]
    InvalidSpec(String),
    #[error("singular linear system: {0}")]
    SingularSystem(String),
    #[error("insufficient data: {0}")]
    InsufficientData(String),
    #[error("parse error on line {line}: {message}")]
    Parse { line: u64, message: String },
    #[error("i/o error: {0}")]
    Io(String),
    #[error("usage: {0}")]
    Usage(String),
}

impl Error {
    /// Process exit status used by the command-line front end.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::Usage(_) => 2,
            Error::Io(_) => 3,
            Error::Parse { .. } => 4,
            _ => 5,
        }
    }
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}
