use thiserror::Error;

use crate::verify::Witness;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SsrError {
    #[error("The length of the sign pattern is not correct!")]
    PatternLength { expected: usize, found: usize },

    #[error("invalid sign `{0}`: expected '+' or '-'")]
    InvalidSign(String),

    #[error("order p = {p} out of range 1..={max}")]
    OrderOutOfRange { p: usize, max: usize },

    #[error("index {index} out of range 1..={bound}")]
    IndexOutOfRange { index: usize, bound: usize },

    #[error("index set must be nonempty and strictly increasing")]
    BadIndexSet,

    #[error("dimension mismatch: {0}")]
    Dimension(String),

    #[error("insertion position {at} out of range 1..={max}")]
    PositionOutOfRange { at: usize, max: usize },

    #[error("input is not strictly sign regular: {0}")]
    NotSsr(Witness),

    #[error("a sign for the new minor size is required")]
    NewSignRequired,

    #[error("no new minor size appears, so no sign may be given")]
    NewSignNotAllowed,

    #[error("matrix is singular: {0}")]
    Singular(String),

    #[error("contract violation: {0}")]
    Contract(String),

    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, SsrError>;
