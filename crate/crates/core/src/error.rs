use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("{0} is not a prime")]
    NotPrime(u64),
    #[error("extension degree must be at least 1")]
    InvalidDegree,
    #[error("field order {0} exceeds the supported maximum of 2^20")]
    FieldTooLarge(u128),
    #[error("element index {index} is out of range for a field of order {order}")]
    ElementOutOfRange { index: u64, order: u32 },
    #[error("operation is undefined for the zero element")]
    ZeroElement,
    #[error("{d} does not divide the multiplicative group order {group}")]
    NotDivisor { d: u32, group: u32 },
    #[error("coordinate set {0} is empty")]
    EmptySet(usize),
    #[error("coordinate set {0} contains zero")]
    ZeroInSet(usize),
    #[error("coordinate set {set} contains element {elem} more than once")]
    DuplicateElement { set: usize, elem: u32 },
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("operands live in different fields ({0} vs {1})")]
    FieldMismatch(String, String),
    #[error("variable index {index} out of range for {nvars} variables")]
    VariableOutOfRange { index: usize, nvars: usize },
    #[error("point is not contained in the domain")]
    NotInDomain,
    #[error("enumeration of {size} points exceeds the cap of {cap}")]
    CapExceeded { size: String, cap: u64 },
    #[error("hypothesis violated: {0}")]
    Hypothesis(String),
    #[error("no radius bound applies: {0}")]
    NoApplicableRadius(String),
    #[error("unsupported: {0}")]
    Unsupported(String),
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
    #[error(transparent)]
    Io(#[from] std::io::Error),
}
