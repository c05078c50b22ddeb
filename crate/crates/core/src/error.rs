use thiserror::Error;

/// Errors raised anywhere in the library.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("variable lists differ: {left:?} vs {right:?}")]
    VariableMismatch { left: Vec<String>, right: Vec<String> },
    #[error("unknown variable `{0}`")]
    UnknownVariable(String),
    #[error("inexact division: {0}")]
    InexactDivision(String),
    #[error("series precondition violated: {0}")]
    SeriesPrecondition(String),
    #[error("vector is outside the rational span of the lattice basis")]
    NotInSpan,
    #[error("vector has non-integral lattice coordinates {0:?}")]
    NotInLattice(Vec<String>),
    #[error("lattice basis is degenerate: {0}")]
    DegenerateBasis(String),
    #[error("capacity exceeded: {what} is {size}, limit {limit}")]
    Capacity { what: String, size: u128, limit: u128 },
    #[error("invalid root system: {0}")]
    InvalidSystem(String),
    #[error("domain error: {0}")]
    Domain(String),
    #[error("non-integral coefficient in {0}")]
    NonIntegral(String),
    #[error("finite field method not applicable: {0}")]
    Inadmissible(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("rank mismatch: {0}")]
    RankMismatch(String),
}

pub type Result<T> = std::result::Result<T, Error>;
