use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid token {0:?}: expected a positive integer")]
    InvalidToken(String),
    #[error("value {value} appears more than once")]
    DuplicateValue { value: u32 },
    #[error("duplicate entry {0} in a word that must have distinct values")]
    DuplicateEntry(String),
    #[error("not a permutation of 1..{len}: value {value} is out of range")]
    OutOfRange { value: u32, len: usize },
    #[error("malformed dashed pattern {0:?}")]
    MalformedPattern(String),
    #[error("words have different lengths ({left} vs {right})")]
    LengthMismatch { left: usize, right: usize },
    #[error("operation requires a non-empty permutation")]
    EmptyPermutation,
    #[error("operation requires length at least {min}, got {len}")]
    TooShort { min: usize, len: usize },
    #[error("permutation {0} contains 1-32-4")]
    NotAnAvoider(String),
    #[error("malformed decomposition: {0}")]
    MalformedDecomposition(String),
    #[error("child {spec} is not valid for a parent with label {label}")]
    InvalidChildSpec { spec: String, label: usize },
    #[error("n = {n} exceeds the cap of {cap} (use --force to override)")]
    CapExceeded { n: usize, cap: usize },
    #[error("unknown statistic {0:?}")]
    UnknownStatistic(String),
    #[error("continued fraction not stable at depth {depth} for order {order}")]
    UnstableContinuedFraction { depth: usize, order: usize },
    #[error("series {0}")]
    Series(String),
}

pub type Result<T> = std::result::Result<T, Error>;
