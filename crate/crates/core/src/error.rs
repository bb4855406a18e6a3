use thiserror::Error;

/// Errors produced by fuzzy-number construction, depth evaluation and median
/// computation.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("not nested: alpha-cuts grow at level {level}")]
    NotNested { level: usize },

    #[error("empty cut: lower endpoint exceeds upper endpoint at level {level}")]
    EmptyCut { level: usize },

    #[error("not compact: non-finite endpoint at level {level}")]
    NotCompact { level: usize },

    #[error("grid mismatch: expected {expected} levels, found {found}")]
    GridMismatch { expected: usize, found: usize },

    #[error("domain error: {0}")]
    Domain(String),

    #[error("degenerate distribution: {0}")]
    Degenerate(String),

    #[error("unsupported backend: {0}")]
    Unsupported(String),
}

pub type Result<T> = std::result::Result<T, Error>;
