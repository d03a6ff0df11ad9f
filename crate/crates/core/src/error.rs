use std::path::PathBuf;

use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("modulus must be at least 2, got {0}")]
    InvalidModulus(usize),

    #[error("{0} is not prime; use the cyclic (non-degenerate) verifier for composite moduli")]
    NotPrime(usize),

    #[error("word has length {found}, expected {expected}")]
    LengthMismatch { expected: usize, found: usize },

    #[error("invalid color symbol {symbol:?} at position {position}; expected 'B' or 'R'")]
    InvalidSymbol { symbol: char, position: usize },

    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("modulus {modulus} exceeds the enumeration guard {guard}; exhaustive search is exponential, raise the guard explicitly or use the SAT path")]
    GuardExceeded { modulus: usize, guard: usize },

    #[error("unsupported: {0}")]
    Unsupported(String),

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("certificate failure: {0}")]
    Certificate(String),

    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
}

impl Error {
    pub(crate) fn parse(line: usize, message: impl Into<String>) -> Self {
        Error::Parse {
            line,
            message: message.into(),
        }
    }

    pub(crate) fn io(path: impl Into<PathBuf>, source: std::io::Error) -> Self {
        Error::Io {
            path: path.into(),
            source,
        }
    }
}
