use std::path::PathBuf;

pub type Result<T, E = Error> = std::result::Result<T, E>;

/// A parse failure at a 1-based line of some input.
#[derive(Debug, Clone, PartialEq, thiserror::Error)]
#[error("line {line}: {message}")]
pub struct ParseError {
    pub line: usize,
    pub message: String,
}

impl ParseError {
    pub fn new(line: usize, message: impl Into<String>) -> Self {
        ParseError { line, message: message.into() }
    }
}

#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error("{0}")]
    Usage(String),
    #[error("{}: {source}", path.display())]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
    #[error("{}: {source}", path.display())]
    Parse {
        path: PathBuf,
        #[source]
        source: ParseError,
    },
    #[error(transparent)]
    Data(#[from] nounclass_core::Error),
    #[error("{0}")]
    Invalid(String),
}

impl Error {
    /// Process exit status: 2 usage, 3 file access, 4 malformed input,
    /// 5 data rejected by the pipeline.
    pub fn exit_code(&self) -> u8 {
        match self {
            Error::Usage(_) => 2,
            Error::Io { .. } => 3,
            Error::Parse { .. } => 4,
            Error::Data(_) | Error::Invalid(_) => 5,
        }
    }
}
