use thiserror::Error;

use crate::poly::MultiDegree;

pub type Result<T, E = Error> = std::result::Result<T, E>;

/// Where and why a polynomial string failed to parse.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("column {column}: {kind}")]
pub struct ParseError {
    /// 1-based character column in the input text.
    pub column: usize,
    pub kind: ParseErrorKind,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseErrorKind {
    #[error("unknown variable `{0}`")]
    UnknownVariable(String),
    #[error("variable `{0}` belongs to the other ring")]
    MixedRings(String),
    #[error("malformed exponent")]
    MalformedExponent,
    #[error("{0}")]
    Syntax(String),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("parse error at {0}")]
    Parse(#[from] ParseError),
    #[error("operands live in different rings")]
    MixedRings,
    #[error("polynomial is not multihomogeneous: terms of degree {first} and {second}")]
    NotMultihomogeneous { first: MultiDegree, second: MultiDegree },
    #[error("zero polynomial where a nonzero one is required")]
    ZeroPolynomial,
    #[error("expected {expected} values, found {found}")]
    ArityMismatch { expected: usize, found: usize },
    #[error("no value assigned to variable {0}")]
    MissingAssignment(String),
    #[error("matrix is {rows}x{cols}, expected square")]
    NonSquare { rows: usize, cols: usize },
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("degree {0} must have strictly positive components")]
    NonPositiveDegree(MultiDegree),
    #[error("invalid block structure: {0}")]
    InvalidBlocks(String),
    #[error("invalid problem instance: {0}")]
    InvalidInstance(String),
    #[error("strand invariant violated: {0}")]
    StrandInvariant(String),
    #[error("inconclusive: {0}")]
    Inconclusive(String),
    #[error("every sampled maximal minor vanished; the matrix is rank deficient at this degree")]
    AllMinorsZero,
    #[error("precondition violated: {0}")]
    Precondition(String),
}
