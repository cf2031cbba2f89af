use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("extension degree must be at least 1, got {0}")]
    BadDegree(u32),
    #[error("field too large: {0}")]
    FieldTooLarge(String),
    #[error("invalid modulus: {0}")]
    InvalidModulus(String),
    #[error("element {value} out of range for field of size {size}")]
    ElementOutOfRange { value: u64, size: u64 },
    #[error("division by zero")]
    DivisionByZero,
    #[error("operands belong to different coefficient fields")]
    MixedFields,
    #[error("series has zero constant term")]
    ZeroConstantTerm,
    #[error("inner series must have zero constant term")]
    NonZeroInnerConstant,
    #[error("derivative order {order} exceeds precision {prec}")]
    OrderExceedsPrecision { order: usize, prec: usize },
    #[error("index out of domain: {0}")]
    Domain(String),
    #[error("tower index {index} exceeds guard cap {cap}")]
    TowerCap { index: usize, cap: usize },
    #[error("parse error: {0}")]
    Parse(String),
    #[error("invalid configuration: {0}")]
    Config(String),
}

pub type Result<T> = std::result::Result<T, Error>;
