use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid field extension: {0}")]
    InvalidExtension(String),
    #[error("division by zero")]
    DivisionByZero,
    #[error("elements live in incompatible field towers")]
    FieldMismatch,
    #[error("no complex conjugation available in this tower: {0}")]
    ConjugationUnavailable(String),
    #[error("invalid input: {0}")]
    InvalidInput(String),
    #[error("polynomial is not divisible by {0}")]
    NotDivisible(String),
    #[error("series has a fixed component: gcd is not constant")]
    NonConstantGcd,
    #[error("recursion limit of {0} blowups exceeded")]
    RecursionLimitExceeded(usize),
    #[error("blowup center is not a basepoint of the current strict transform")]
    NotABasepoint,
    #[error("adjoint series needs degree at least 3, got {0}")]
    NoAdjoint(i64),
    #[error("classes use different lattice bases")]
    BasisMismatch,
    #[error("generators are linearly dependent")]
    DependentGenerators,
    #[error("parse error at byte {pos}: {msg}")]
    Parse { pos: usize, msg: String },
    #[error("internal invariant violated: {0}")]
    Invariant(String),
}

pub type Result<T> = std::result::Result<T, Error>;
