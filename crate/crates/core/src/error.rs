use thiserror::Error;

/// Everything that can go wrong in the library.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("characteristic {0} is not prime")]
    NonPrimeCharacteristic(u32),
    #[error("extension degree must be at least 1")]
    ZeroDegree,
    #[error("field order {0} exceeds the supported maximum of 256")]
    FieldTooLarge(u64),
    #[error("{0} is not a prime power")]
    NotPrimePower(u32),
    #[error("no built-in modulus for GF({p}^{m}); supply one explicitly")]
    MissingModulus { p: u32, m: u32 },
    #[error("modulus must be monic of degree {m} with coefficients below {p}")]
    MalformedModulus { p: u32, m: u32 },
    #[error("modulus is reducible over GF({p})")]
    ReducibleModulus { p: u32 },
    #[error("value {value} is not an element of GF({q})")]
    InvalidElement { value: u32, q: u32 },
    #[error("zero has no multiplicative inverse")]
    ZeroInverse,
    #[error("a generator matrix needs at least one row")]
    NoRows,
    #[error("dimension mismatch: expected {expected}, got {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("index {index} out of range (limit {limit})")]
    IndexOutOfRange { index: usize, limit: usize },
    #[error("operands live in different fields")]
    FieldMismatch,
    #[error("generator matrix has rank {rank} < {k}")]
    RankDeficient { rank: usize, k: usize },
    #[error("length mismatch: {left} vs {right}")]
    LengthMismatch { left: usize, right: usize },
    #[error("demand vector is not nonincreasing at position {position}")]
    DemandNotSorted { position: usize },
    #[error("matrices with more than {limit} columns are not supported here")]
    TooManyColumns { limit: usize },
    #[error("assignment violates the constraint of hyperplane {point}")]
    InfeasibleAssignment { point: String },
    #[error("search bound {n_max} is below the Griesmer floor {floor}")]
    BoundBelowFloor { n_max: usize, floor: u64 },
    #[error("no code found within length {n_max}")]
    BoundExceeded { n_max: usize },
    #[error("instance exceeds the exhaustive-search scale ({what})")]
    ScaleExceeded { what: String },
}

pub type Result<T> = std::result::Result<T, Error>;
