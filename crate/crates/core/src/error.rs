use thiserror::Error;

/// Errors reported by the library.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid instance: {0}")]
    InvalidInstance(String),
    #[error("invalid allocation: {0}")]
    InvalidAllocation(String),
    #[error("operation requires a binary profile")]
    NotBinary,
    #[error("operation requires m = n (got n = {n}, m = {m})")]
    NotSquare { n: usize, m: usize },
    #[error("unsupported profile/objective combination: {0}")]
    Unsupported(String),
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("size guard exceeded: {0}")]
    TooLarge(String),
    #[error("search budget exceeded")]
    BudgetExceeded,
    #[error("instance is not extremal")]
    NotExtremal,
    #[error("trace does not match allocation: {0}")]
    TraceMismatch(String),
    #[error("no applicable method within the configured budgets")]
    NoApplicableMethod,
    #[error("i/o: {0}")]
    Io(String),
}

pub type Result<T> = std::result::Result<T, Error>;
