use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("field order {0} is not a prime power in [2, 65536]")]
    InvalidFieldOrder(u64),
    #[error("inversion of zero")]
    InversionOfZero,
    #[error("element {element} does not belong to F_{q}")]
    MismatchedFields { element: u32, q: u32 },
    #[error("{what}: needs {needed}, budget is {limit}")]
    BudgetExceeded {
        what: &'static str,
        needed: u128,
        limit: u128,
    },
    #[error("ambient mismatch: (q={q1}, m={m1}) vs (q={q2}, m={m2})")]
    MismatchedAmbient { q1: u32, m1: usize, q2: u32, m2: usize },
    #[error("exponent set is not reduced (exponents must lie in [0, q-1])")]
    NotReduced,
    #[error("exponent set is empty")]
    EmptySet,
    #[error("invalid order: {0}")]
    InvalidOrder(String),
    #[error("d = {0} must be even")]
    ParityError(u64),
    #[error("parameter out of range: {0}")]
    RangeError(String),
    #[error("matrix dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("witness monomial {0:?} is not in the exponent set")]
    SupportOutsideA(Vec<u32>),
    #[error("invalid exponent vector: {0}")]
    InvalidExponent(String),
    #[error("invalid region: {0}")]
    InvalidRegion(String),
    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl From<serde_json::Error> for Error {
    fn from(e: serde_json::Error) -> Self {
        Error::Parse(e.to_string())
    }
}
