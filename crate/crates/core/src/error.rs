use thiserror::Error;

/// Errors raised by the library. The CLI maps each variant to an exit code.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("element is not divisible by h^{requested} (valuation {valuation})")]
    NotDivisible { requested: u32, valuation: u32 },

    #[error("matrix is singular in the quotient ring (determinant is not a unit)")]
    SingularMatrix,

    #[error("internal invariant violated: {0}")]
    Invariant(String),

    #[error("malformed word at position {position}: unexpected {token:?}")]
    MalformedWord { position: usize, token: char },

    #[error("no ordering of the generator images gives a scalar product")]
    ConventionFailure,

    #[error("no ping-pong certificate found: {0}")]
    NoCertificate(String),

    #[error("precondition failed: {0}")]
    Precondition(String),

    #[error("budget exceeded after {count} elements (cap {cap})")]
    BudgetExceeded { count: usize, cap: usize },

    #[error("word is not in the subgroup (ends at coset {coset})")]
    NotAMember { coset: usize },

    #[error("verification failed: {0}")]
    Verification(String),
}

pub type Result<T> = std::result::Result<T, Error>;
