use thiserror::Error;

/// Errors produced anywhere in the library.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("generator list is empty")]
    EmptyGenerators,

    #[error("generators must be positive; got 0")]
    ZeroGenerator,

    #[error("generators have gcd {gcd} > 1, so the monoid is not cofinite")]
    NonCoprime { gcd: u64 },

    #[error("arithmetic overflow while {0}")]
    Overflow(&'static str),

    #[error("{element} is not an element of the monoid")]
    NotInMonoid { element: i64 },

    #[error("element {element} has more than {cap} factorizations")]
    ExplosionGuard { element: u64, cap: usize },

    #[error("factorization dimensions differ: {left} vs {right}")]
    DimensionMismatch { left: usize, right: usize },

    #[error("factorization set is empty")]
    EmptySet,

    #[error("operation requires embedding dimension 3, monoid has {0}")]
    NotDimension3(usize),

    #[error("operation requires embedding dimension at least 2, monoid has {0}")]
    EmbeddingDimensionTooSmall(usize),

    #[error("invalid factorization: {0}")]
    InvalidFactorization(String),

    #[error("precondition failed: {0}")]
    PreconditionFailed(String),

    #[error("no target factorization for move: {0}")]
    NoTargetFactorization(String),

    #[error("invalid family parameters: {0}")]
    InvalidFamily(String),

    #[error("a scan bound is required: {0}")]
    MissingBound(String),

    #[error("guard violated: {0}")]
    Guard(String),

    #[error("invalid grid specification: {0}")]
    Grid(String),

    #[error("i/o failure: {0}")]
    Io(String),
}

impl Error {
    /// Guard errors mean the instance is too large rather than malformed.
    pub fn is_guard(&self) -> bool {
        matches!(
            self,
            Error::ExplosionGuard { .. } | Error::Overflow(_) | Error::Guard(_)
        )
    }
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}

impl From<csv::Error> for Error {
    fn from(e: csv::Error) -> Self {
        Error::Io(e.to_string())
    }
}

impl From<serde_json::Error> for Error {
    fn from(e: serde_json::Error) -> Self {
        Error::Io(e.to_string())
    }
}

pub type Result<T> = std::result::Result<T, Error>;
