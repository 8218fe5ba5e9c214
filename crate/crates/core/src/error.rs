use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("size mismatch: {0}")]
    SizeMismatch(String),
    #[error("invalid map: {0}")]
    InvalidMap(String),
    #[error("invalid arrow: {0}")]
    InvalidArrow(String),
    #[error("not a Segal map: {0}")]
    NotSegal(String),
    #[error("category axioms violated: {0}")]
    NotACategory(String),
    #[error("functoriality violated: {0}")]
    NotAFunctor(String),
    #[error("bound exceeded: {0}")]
    BoundExceeded(String),
    #[error("not a pullback square: {0}")]
    NotAPullback(String),
    #[error("diagram does not commute: {0}")]
    NotCommutative(String),
    #[error("span mismatch: {0}")]
    SpanMismatch(String),
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("not weight-homogeneous: {0}")]
    NotHomogeneous(String),
    #[error("unsupported relation: {0}")]
    UnsupportedRelation(String),
    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
