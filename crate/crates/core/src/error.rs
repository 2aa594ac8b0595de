use thiserror::Error;

use crate::superfield::Chart;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("chart mismatch: {left:?} vs {right:?}")]
    ChartMismatch { left: Chart, right: Chart },

    #[error("odd dimension mismatch: {left} vs {right}")]
    OddDimMismatch { left: usize, right: usize },

    #[error("field is not homogeneous of degree {expected}")]
    NotHomogeneous { expected: i64 },

    #[error("degree {degree} is outside [-1, {m}]")]
    DegreeOutOfRange { degree: i64, m: usize },

    #[error("parse error at position {pos}: expected {expected}, found {found}")]
    Parse {
        pos: usize,
        expected: String,
        found: String,
    },

    #[error("algebra not available for k = {k:?}: requires {requirement}")]
    AlgebraUnavailable { k: Vec<i64>, requirement: String },

    #[error("invalid bundle automorphism: {0}")]
    InvalidAutomorphism(String),

    #[error("cohomology context mismatch: {0}")]
    ContextMismatch(String),

    #[error("unsupported term shape: {0}")]
    UnsupportedTerm(String),

    #[error("{0}")]
    Precondition(String),
}

impl Error {
    pub(crate) fn parse(pos: usize, expected: impl Into<String>, found: impl Into<String>) -> Self {
        Error::Parse {
            pos,
            expected: expected.into(),
            found: found.into(),
        }
    }

    /// True for errors caused by malformed input text rather than by a
    /// violated mathematical precondition.
    pub fn is_usage(&self) -> bool {
        matches!(self, Error::Parse { .. })
    }
}

pub type Result<T> = std::result::Result<T, Error>;
