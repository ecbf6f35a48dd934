use std::fmt;

use thiserror::Error;

use crate::complex::ComplexError;
use crate::divisors::DivisorError;
use crate::fans::FanError;
use crate::linalg::LinalgError;
use crate::matroid::MatroidError;
use crate::surface::AlphaError;
use crate::todd::ToddError;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ParseErrorKind {
    Syntax(String),
    UnknownIdentifier { kind: &'static str, name: String },
    Duplicate { kind: &'static str, name: String },
    MissingAlpha { edge: String, slot: usize },
    Structure(ComplexError),
}

impl fmt::Display for ParseErrorKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ParseErrorKind::Syntax(msg) => write!(f, "syntax error: {msg}"),
            ParseErrorKind::UnknownIdentifier { kind, name } => {
                write!(f, "unknown {kind} `{name}`")
            }
            ParseErrorKind::Duplicate { kind, name } => write!(f, "duplicate {kind} `{name}`"),
            ParseErrorKind::MissingAlpha { edge, slot } => {
                write!(f, "missing alpha for edge `{edge}` slot {slot}")
            }
            ParseErrorKind::Structure(e) => write!(f, "{e}"),
        }
    }
}

/// A file-format error. `line == 0` marks errors that belong to the whole
/// file rather than one line.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub struct ParseError {
    pub line: usize,
    pub column: usize,
    pub kind: ParseErrorKind,
}

impl ParseError {
    pub fn new(line: usize, column: usize, kind: ParseErrorKind) -> Self {
        ParseError { line, column, kind }
    }

    pub fn global(kind: ParseErrorKind) -> Self {
        ParseError::new(0, 0, kind)
    }
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.line == 0 {
            write!(f, "{}", self.kind)
        } else {
            write!(
                f,
                "line {}, column {}: {}",
                self.line, self.column, self.kind
            )
        }
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error(transparent)]
    Parse(#[from] ParseError),
    #[error(transparent)]
    Complex(#[from] ComplexError),
    #[error(transparent)]
    Alpha(#[from] AlphaError),
    #[error(transparent)]
    Linalg(#[from] LinalgError),
    #[error(transparent)]
    Divisor(#[from] DivisorError),
    #[error(transparent)]
    Todd(#[from] ToddError),
    #[error(transparent)]
    Fan(#[from] FanError),
    #[error(transparent)]
    Matroid(#[from] MatroidError),
}

impl Error {
    pub fn is_resource_limit(&self) -> bool {
        matches!(
            self,
            Error::Linalg(LinalgError::ResourceLimit(_))
                | Error::Divisor(DivisorError::Linalg(LinalgError::ResourceLimit(_)))
        )
    }
}
