use thiserror::Error;

/// Every failure the library reports.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("syntax error at line {line}, column {column}: {message}")]
    Syntax {
        line: usize,
        column: usize,
        message: String,
    },
    #[error("unknown variable `{name}` at line {line}, column {column}")]
    UnknownVariable {
        name: String,
        line: usize,
        column: usize,
    },
    #[error("modulus {0} is not a prime below 2^32")]
    NonPrimeModulus(u64),
    #[error("operands live in different polynomial rings")]
    RingMismatch,
    #[error("monomial exponent overflow")]
    ExponentOverflow,
    #[error("degree guard tripped: intermediate degree {degree} exceeds limit {limit}")]
    DegreeGuard { degree: u32, limit: u32 },
    #[error("rank guard tripped: free module rank {rank} exceeds limit {limit}")]
    RankGuard { rank: usize, limit: usize },
    #[error("ideal is not zero-dimensional")]
    NotZeroDimensional,
    #[error("ideal is the unit ideal")]
    UnitIdeal,
    #[error("quotient is not local at the origin (variable `{0}` is not nilpotent)")]
    NotLocal(String),
    #[error("algebra is not Gorenstein (type {0})")]
    NotGorenstein(usize),
    #[error("bad socle element: {0}")]
    BadSocleElement(String),
    #[error("variable `{0}` occurs in both factors")]
    VariableCollision(String),
    #[error("subspace is not an ideal")]
    NotAnIdeal,
    #[error("characteristic {characteristic} must be 0 or exceed the degree {degree}")]
    CharacteristicTooSmall { characteristic: u64, degree: u32 },
    #[error("precondition violated: {0}")]
    Precondition(String),
}

pub type Result<T> = std::result::Result<T, Error>;
