use alloc::string::String;

use crate::scalar::Field;

/// Errors raised by the exact algebra and the point models built on it.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    #[error("field mismatch: {left} vs {right}")]
    FieldMismatch { left: Field, right: Field },
    #[error("shape mismatch: {0}")]
    ShapeMismatch(String),
    #[error("{0} is not a prime below 2^31")]
    NotPrime(u64),
    #[error("cannot parse scalar {0:?}")]
    ParseScalar(String),
    #[error("division by zero")]
    DivisionByZero,
    #[error("gauge element is singular")]
    SingularGauge,
    #[error("support points are not pairwise distinct")]
    DuplicateSupport,
    #[error("representation is not stable")]
    NotStable,
    #[error("matrices do not commute")]
    NotCommuting,
    #[error("expected dimension {expected} exceeds tangent dimension {tangent}")]
    DimensionMismatch { expected: usize, tangent: usize },
    #[error("operation requires {expected} loops, got {actual}")]
    WrongLoopCount { expected: usize, actual: usize },
    #[error("datum does not satisfy the moment-map relation")]
    NotOnVariety,
    #[error("rank must be positive")]
    ZeroRank,
    #[error("parameter out of range: {0}")]
    ParameterOutOfRange(String),
    #[error("enumeration of {required} tuples exceeds the budget of {budget}")]
    BudgetExceeded { required: u128, budget: u128 },
    #[error("{numerator} is not divisible by {denominator}")]
    NonIntegralOrbitCount { numerator: u128, denominator: u128 },
    #[error("operation requires a prime field, got {0}")]
    NotPrimeField(Field),
    #[error("sampler gave up after {0} attempts")]
    SamplingFailed(usize),
}

pub type Result<T, E = Error> = core::result::Result<T, E>;
