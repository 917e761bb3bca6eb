use std::fmt;

use thiserror::Error;

/// Location of a malformed token in textual input.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParseError {
    /// Where the token lives, e.g. `rows[1][0]`. Empty for bare strings.
    pub location: String,
    /// Byte offset inside the token.
    pub offset: usize,
    pub message: String,
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.location.is_empty() {
            write!(f, "at offset {}: {}", self.offset, self.message)
        } else {
            write!(f, "{} at offset {}: {}", self.location, self.offset, self.message)
        }
    }
}

#[derive(Debug, Error)]
pub enum Error {
    #[error("elements belong to different quadratic fields (sqrt({0}) vs sqrt({1}))")]
    FieldMismatch(u64, u64),

    #[error("division by zero")]
    DivisionByZero,

    #[error("radicand {0} must be a square-free integer >= 2")]
    InvalidRadicand(u64),

    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    #[error("matrix is singular")]
    SingularMatrix,

    #[error("integer matrix does not have full row rank")]
    RankDeficient,

    #[error("matrix has an irrational entry at ({row}, {col})")]
    IrrationalEntries { row: usize, col: usize },

    #[error("vector has irrational lattice coordinates")]
    IrrationalCoordinates,

    #[error("zero vector")]
    ZeroVector,

    #[error("{0} is not a valid clearing multiple for this matrix")]
    InvalidClearingMultiple(u64),

    #[error("lattice is not reflective: ratio (a{j}, a{i})/(a{k}, a{k}) = {ratio} is irrational")]
    NotReflectiveLattice {
        i: usize,
        j: usize,
        k: usize,
        ratio: String,
    },

    #[error("not a coincidence isometry: {0}")]
    NotCoincidenceIsometry(String),

    #[error("invalid planar parameters: {0}")]
    InvalidParams(String),

    #[error("b = sqrt({0}) is not representable in the current field")]
    UnrepresentableB(String),

    #[error("parse error {0}")]
    Parse(ParseError),

    #[error("malformed document: {0}")]
    Document(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    pub(crate) fn parse(location: impl Into<String>, offset: usize, message: impl Into<String>) -> Self {
        Error::Parse(ParseError {
            location: location.into(),
            offset,
            message: message.into(),
        })
    }
}
