use thiserror::Error;

/// Errors raised by the library.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    #[error("invalid generator set: {0}")]
    InvalidGenerators(String),

    #[error("vector is not in the rational span of the generators")]
    NotInRationalSpan,

    #[error("no positive multiple of the vector lies in the semigroup")]
    NotInCone,

    #[error("generator set already has full rank {0}")]
    NotDegenerate(usize),

    #[error("k1 = {k1} is not in the numerical semigroup generated by {multipliers:?}")]
    K1NotInU { k1: u64, multipliers: Vec<u64> },

    #[error("{multiple} times the line direction is not in the semigroup generated by A")]
    K2MultipleNotInA { multiple: u64 },

    #[error("scaling factors must be positive (got k1 = {k1}, k2 = {k2})")]
    InvalidScaling { k1: u64, k2: u64 },

    #[error("sum of exponents weighted by multipliers is not divisible by k1 = {0}")]
    NotDivisible(u64),

    #[error("no construction available for this shape: {0}")]
    UnsupportedShape(String),

    #[error("the pair cannot be glued: {0}")]
    CannotGlue(String),

    #[error("not applicable: {0}")]
    NotApplicable(String),

    #[error("resource limit exceeded: {0}")]
    ResourceLimit(String),

    #[error("integer overflow: {0}")]
    Overflow(String),

    #[error("internal consistency check failed: {0}")]
    Inconsistent(String),
}

pub type Result<T> = std::result::Result<T, Error>;
