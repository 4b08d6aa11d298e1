use thiserror::Error;

use crate::parse::ParseError;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("ring context mismatch: {left} vs {right} variables")]
    ContextMismatch { left: usize, right: usize },
    #[error("variable index {index} out of range for a ring with {nvars} variables")]
    IndexOutOfRange { index: usize, nvars: usize },
    #[error("length mismatch: expected {expected}, found {found}")]
    LengthMismatch { expected: usize, found: usize },
    #[error("rank mismatch: expected {expected}, found {found}")]
    RankMismatch { expected: usize, found: usize },
    #[error("invalid ring declaration: {0}")]
    InvalidRing(String),
    #[error(transparent)]
    Parse(#[from] ParseError),
    #[error("not a complete intersection: codimension {codim} but {generators} generators")]
    NotCompleteIntersection { codim: usize, generators: usize },
    #[error("containment fails: {0}")]
    NotContained(String),
    #[error("Jacobian condition fails: J(h) lies in a minimal prime of O/g")]
    JacobianConditionFailed,
    #[error("cannot express generators of h through generators of g: {0}")]
    DecompositionFailed(String),
    #[error("bad split: {0}")]
    BadSplit(String),
    #[error("not a line case: {0}")]
    NotALineCase(String),
    #[error("not an isolated complete intersection along the line: {0}")]
    NotIcis(String),
}
