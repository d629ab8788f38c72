use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("{0} is not prime")]
    NotPrime(u32),
    #[error("invalid field: {0}")]
    InvalidField(String),
    #[error("field too large: {p}^{e} exceeds the supported order")]
    FieldTooLarge { p: u32, e: u32 },
    #[error("operands belong to different fields")]
    FieldMismatch,
    #[error("inverse of zero")]
    ZeroInverse,
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("operands belong to different groups")]
    GroupMismatch,
    #[error("group of order {order} exceeds the enumeration bound {bound}")]
    EnumerationBound { order: u64, bound: u64 },
    #[error("duplicate subgroup at position {0}")]
    DuplicateSubgroup(usize),
    #[error("invalid module: {0}")]
    InvalidModule(String),
    #[error("invalid complex: {0}")]
    InvalidComplex(String),
    #[error("precondition failed: {0}")]
    Precondition(String),
    #[error("invariant violated: {0}")]
    Internal(String),
    #[error("parse error: {0}")]
    Parse(String),
}
