use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("degree mismatch: {0} vs {1}")]
    DegreeMismatch(usize, usize),

    #[error("degree {0} exceeds the supported maximum of {1}")]
    DegreeTooLarge(usize, usize),

    #[error("images do not form a bijection on 0..{0}")]
    NotABijection(usize),

    #[error("point {point} outside the domain of size {degree}")]
    PointOutOfRange { point: usize, degree: usize },

    #[error("group order {order} exceeds the enumeration bound {bound}")]
    BoundExceeded { order: String, bound: u64 },

    #[error("search budget of {0} nodes exceeded")]
    BudgetExceeded(u64),

    #[error("modulus mismatch: {0} vs {1}")]
    ModulusMismatch(u32, u32),

    #[error("{0} is not an odd prime")]
    NotOddPrime(u32),

    #[error("q = {q} is outside the supported range (max {max})")]
    FieldTooLarge { q: u32, max: u32 },

    #[error("matrix is singular")]
    Singular,

    #[error("generators do not commute")]
    NotAbelian,

    #[error("connection set contains the identity")]
    IdentityInConnectionSet,

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("construction failed: {0}")]
    Construction(String),

    #[error("invalid partition: {0}")]
    InvalidPartition(String),

    #[error("coefficient overflow in group algebra arithmetic")]
    Overflow,

    #[error("malformed input: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
