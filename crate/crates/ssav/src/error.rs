use thiserror::Error;

/// Errors produced by classification and verification routines.
///
/// `NotSupersingular` and `NotElementary` are mathematical rejections of
/// well-formed input; the remaining variants indicate a violated
/// precondition or malformed input.
#[derive(Debug, Clone, Error, PartialEq, Eq)]
pub enum Error {
    #[error("invalid input: {0}")]
    InvalidInput(String),
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("not supersingular: {0}")]
    NotSupersingular(String),
    #[error("not elementary: {0}")]
    NotElementary(String),
    #[error("sqrt({p}) does not lie in Q(zeta_{level})")]
    SqrtNotInField { p: u64, level: u64 },
    #[error("verification failed: {0}")]
    Verification(String),
}

pub type Result<T> = std::result::Result<T, Error>;
