use num_bigint::BigInt;
use thiserror::Error;

/// Errors raised by the continued-fraction engine.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid surd: denominator Q must be non-zero")]
    ZeroDenominator,
    #[error("invalid surd: radicand {0} is negative")]
    NegativeRadicand(BigInt),
    #[error("surd with square radicand {0} is rational; use rational_cf instead")]
    RationalSurd(BigInt),
    #[error("polynomial has rational roots (discriminant {0} is a perfect square)")]
    RationalRoot(BigInt),
    #[error("polynomial has no real irrational roots (discriminant {0} is not positive)")]
    ComplexRoot(BigInt),
    #[error("polynomial leading coefficient must be non-zero")]
    DegeneratePolynomial,
    #[error("integer square root of negative number {0}")]
    NegativeSqrt(BigInt),
    #[error("{0} is a perfect square")]
    SquareInput(BigInt),
    #[error("{0} is outside the domain (expected N >= 2)")]
    Domain(BigInt),
    #[error("invalid continued fraction: {0}")]
    InvalidDigits(String),
    #[error("precondition failed: {0}")]
    Precondition(String),
    #[error("invariant violated: {0}")]
    InvariantViolation(String),
    #[error("expansion exceeded iteration cap of {0} steps")]
    IterationCap(u64),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
