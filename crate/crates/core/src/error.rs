use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("matrix is not square ({rows}x{cols})")]
    NotSquare { rows: usize, cols: usize },

    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    #[error("degree {degree} out of range 0..={max}")]
    DegreeOutOfRange { degree: usize, max: usize },

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("parse error at line {line}, column {column}: {message}")]
    Parse {
        line: usize,
        column: usize,
        message: String,
    },

    #[error("unknown variable `{0}`")]
    UnknownVariable(String),

    #[error("unknown algebra `{0}`")]
    UnknownAlgebra(String),

    #[error("odd dimension {0}: no symplectic form")]
    OddDimension(usize),

    #[error("two-form is not closed")]
    NotClosed,

    #[error("precondition failed: {0}")]
    Precondition(String),

    #[error("invalid cubic x^3 - {p}x^2 + {q}x - 1: {reason}")]
    InvalidCubic { p: i64, q: i64, reason: String },

    #[error("certificate check `{0}` failed")]
    CertificateFailed(String),
}

impl Error {
    pub(crate) fn parse(line: usize, column: usize, message: impl Into<String>) -> Self {
        Error::Parse {
            line,
            column,
            message: message.into(),
        }
    }
}
