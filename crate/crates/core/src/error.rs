use thiserror::Error;

/// Errors produced anywhere in the library.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("{0} is not a prime in the supported range 2..=65536")]
    NotPrime(u64),

    #[error("modulus mismatch: {left} vs {right}")]
    ModulusMismatch { left: u32, right: u32 },

    #[error("division by zero")]
    DivisionByZero,

    #[error("series is not a p-th power: nonzero coefficient at index {index}")]
    NotAPthPower { index: usize },

    #[error("weeding degree {degree} out of range for p = {p} (need degree < p)")]
    DegreeOutOfRange { degree: usize, p: u32 },

    #[error("section index {index} out of range for p = {p}")]
    SectionOutOfRange { index: usize, p: u32 },

    #[error("malformed series literal: {0}")]
    MalformedSeries(String),

    #[error("syntax error at position {position}: {message}")]
    Syntax { position: usize, message: String },

    #[error("degree overflow: x-degree {dx} / y-degree {dy} exceeds cap {max_dx} / {max_dy}")]
    DegreeOverflow {
        dx: usize,
        dy: usize,
        max_dx: usize,
        max_dy: usize,
    },

    #[error("polynomial does not involve y")]
    NoYTerm,

    #[error("ambiguous branch: several candidates for coefficient {0} (seed too short)")]
    AmbiguousBranch(usize),

    #[error("no power-series branch: no candidate for coefficient {0}")]
    NoBranch(usize),

    #[error("denominator has zero constant term")]
    NonUnitDenominator,

    #[error("state cap of {0} exceeded")]
    StateCapExceeded(usize),

    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("malformed number: {0:?}")]
    MalformedNumber(String),

    #[error("schema error: {0}")]
    Schema(String),

    #[error("no relation found with x-degree <= {dx} and y-degree <= {dy}")]
    NoRelationFound { dx: usize, dy: usize },

    #[error("need at least {needed} terms, got {got}")]
    InsufficientTerms { needed: usize, got: usize },

    #[error("invalid configuration: {0}")]
    InvalidConfig(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
