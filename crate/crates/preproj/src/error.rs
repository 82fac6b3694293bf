use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum Error {
    #[error("quiver has a loop at vertex {0}")]
    Loop(usize),
    #[error("invalid relation: {0}")]
    BadRelation(String),
    #[error("shape mismatch: {0}")]
    Shape(String),
    #[error("representations live over different quivers")]
    QuiverMismatch,
    #[error("module violates the preprojective relations")]
    RelationsFail,
    #[error("invalid segment [{0},{1}]")]
    BadSegment(usize, usize),
    #[error("word content does not match the dimension vector")]
    ContentMismatch,
    #[error("minor is identically zero (row index exceeds column index)")]
    ZeroMinor,
    #[error("invalid minor indices: {0}")]
    BadMinor(String),
    #[error("vector is not a positive root")]
    NotPositiveRoot,
    #[error("no root class: rank divides quasi-length")]
    EmptyClass,
    #[error("point counts are not polynomial: {0}")]
    NotPolynomialCount(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("{0}")]
    Other(String),
}

pub type Result<T> = std::result::Result<T, Error>;
