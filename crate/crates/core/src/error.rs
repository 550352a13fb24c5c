use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

/// Every failure the library can report.
#[derive(Debug, Error)]
pub enum Error {
    #[error("{0} is not prime")]
    NotPrime(u32),
    #[error("extension degree must be at least 1, got {0}")]
    ZeroDegree(u32),
    #[error("field order {p}^{k} exceeds the supported maximum 65536")]
    FieldTooLarge { p: u32, k: u32 },
    #[error("modulus {0:?} is invalid: {1}")]
    BadModulus(Vec<u32>, &'static str),
    #[error("modulus {0:?} is reducible")]
    ReducibleModulus(Vec<u32>),
    #[error("element {value} is outside GF({q})")]
    ElementOutOfRange { value: u32, q: u32 },
    #[error("zero has no multiplicative inverse")]
    ZeroInverse,
    #[error("operands live over different fields")]
    FieldMismatch,
    #[error("shape mismatch: {0}")]
    ShapeMismatch(String),
    #[error("dimension mismatch: expected length {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("basis is linearly dependent")]
    DependentBasis,
    #[error("minimal rank of the zero space is undefined")]
    EmptySpace,
    #[error("operator already lies in the space")]
    InSpace,
    #[error("operator is not in the reflexive closure: {0}")]
    NotInClosure(String),
    #[error("operator is not an element of the coset")]
    NotInCoset,
    #[error("guard exceeded: {what} needs {needed}, limit is {limit}")]
    GuardExceeded { what: &'static str, needed: String, limit: String },
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("malformed profile: {0}")]
    MalformedProfile(String),
    #[error("THEOREM VIOLATION: {0} non-reflexive space(s) exceed the 2n-2 rank bound")]
    TheoremViolation(usize, Box<crate::search::SearchReport>),
    #[error("malformed input: {0}")]
    Malformed(String),
}
