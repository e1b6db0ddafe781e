use thiserror::Error;

/// Errors raised by the engine.
///
/// Every variant carries enough context to tell a malformed input apart from
/// a violated precondition or from a construction that failed to certify.
#[derive(Debug, Clone, Error, PartialEq, Eq)]
pub enum Error {
    #[error("malformed input: {0}")]
    Malformed(String),

    #[error("parse error at offset {offset}: {message}")]
    Parse { offset: usize, message: String },

    #[error("exponent overflow in variable {var}")]
    ExponentOverflow { var: usize },

    #[error("ring mismatch: expected {expected} variables, got {found}")]
    RingMismatch { expected: usize, found: usize },

    #[error("domain error: {0}")]
    Domain(String),

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("invalid filtration at step {index}: {reason}")]
    InvalidFiltration { index: usize, reason: String },

    #[error("invalid Stanley decomposition: {0}")]
    InvalidDecomposition(String),

    /// A nonzero dimension-filtration factor that is not Cohen-Macaulay.
    #[error("not sequentially Cohen-Macaulay: factor of dimension {k} has depth {depth}")]
    NotSequentiallyCm { k: usize, depth: usize },

    #[error("search infeasible: {0}")]
    Infeasible(String),

    /// A construction that the theory guarantees did not certify.
    #[error("certification failure in {stage}: {detail}")]
    Certification { stage: String, detail: String },
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    pub(crate) fn cert(stage: &str, detail: impl Into<String>) -> Self {
        Error::Certification {
            stage: stage.to_string(),
            detail: detail.into(),
        }
    }

    /// Short machine-readable tag used in structured error payloads.
    pub fn kind(&self) -> &'static str {
        match self {
            Error::Malformed(_) => "malformed",
            Error::Parse { .. } => "parse",
            Error::ExponentOverflow { .. } => "range",
            Error::RingMismatch { .. } => "ring-mismatch",
            Error::Domain(_) => "domain",
            Error::Precondition(_) => "precondition",
            Error::InvalidFiltration { .. } => "invalid-filtration",
            Error::InvalidDecomposition(_) => "invalid-decomposition",
            Error::NotSequentiallyCm { .. } => "not-sequentially-cm",
            Error::Infeasible(_) => "infeasible",
            Error::Certification { .. } => "certification",
        }
    }
}
