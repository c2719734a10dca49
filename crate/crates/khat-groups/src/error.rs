use thiserror::Error;

#[derive(Error, Debug, Clone, PartialEq, Eq)]
pub enum GroupError {
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("{0} is not prime")]
    NotPrime(String),
    #[error("invalid generator: {0}")]
    InvalidGenerator(String),
    #[error("scale factor must be positive, got {0}")]
    NonPositiveScale(String),
    #[error("not a subgroup: {0}")]
    NotSubgroup(String),
    #[error("vector is not a member of the group: {0}")]
    NotMember(String),
    #[error("invalid group data: {0}")]
    InvalidData(String),
}
