use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    /// An argument lies outside the domain of the operation.
    #[error("domain error: {0}")]
    Domain(String),

    /// Channel strengths do not satisfy `0 < a_1 <= ... <= a_K = 1`.
    #[error("channel strengths not normalized: {0}")]
    Normalization(String),

    /// Sizes or encodings that cannot be split as required.
    #[error("format error: {0}")]
    Format(String),

    /// A payload or cached subfile needed for decoding is unavailable.
    #[error("dependency error: {0}")]
    Dependency(String),

    /// Polytopes built over different variable sets.
    #[error("variable mismatch: {0}")]
    VariableMismatch(String),

    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn domain<T>(msg: impl Into<String>) -> Result<T> {
    Err(Error::Domain(msg.into()))
}
