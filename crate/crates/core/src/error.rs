use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// Malformed input: rank mismatch, inhomogeneous data, ring mismatch.
    #[error("structural error: {0}")]
    Structural(String),
    /// A degree or rank cap was hit; the computation gave up rather than guess.
    #[error("budget exceeded: {0}")]
    Budget(String),
    /// A precondition of the requested operation does not hold.
    #[error("inapplicable: {0}")]
    Inapplicable(String),
}

pub type Result<T> = std::result::Result<T, Error>;
