use thiserror::Error;

use crate::report::ValidationReport;

#[derive(Debug, Error)]
pub enum Error {
    /// Table shapes or indices that cannot be interpreted at all.
    #[error("format error: {0}")]
    Format(String),
    #[error("axiom violations:\n{0}")]
    Invalid(ValidationReport),
    #[error("index out of range: {0}")]
    OutOfRange(String),
    #[error("refused: {0}")]
    Refused(String),
    #[error("not a subgroup of the acting group: {0}")]
    NotSubgroup(String),
    #[error("functor is not equivariant at {0}")]
    NotEquivariant(String),
    #[error("truncation mismatch: {0} vs {1}")]
    TruncationMismatch(usize, usize),
    #[error("signature mismatch: {0}")]
    Signature(String),
    /// A map defined on representatives disagrees on two members of one class.
    #[error("map is not well defined on the quotient: {0}")]
    IllDefined(String),
}

pub type Result<T> = std::result::Result<T, Error>;
