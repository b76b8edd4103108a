use thiserror::Error;

/// Errors shared across the workbench.
#[derive(Debug, Clone, Error, PartialEq, Eq)]
pub enum Error {
    /// A name was already taken where a distinct one was required.
    #[error("name clash: {0}")]
    Clash(String),

    /// An argument fell outside the domain an operation is defined on.
    #[error("domain error: {0}")]
    Domain(String),

    /// A graph failed one of the structural well-formedness checks.
    #[error("validation error: {0}")]
    Validation(String),

    /// An expression failed to type-check.
    #[error("type error: {0}")]
    Type(String),

    /// Input text could not be parsed.
    #[error("parse error at line {line}: {msg}")]
    Parse { line: usize, msg: String },

    /// A bounded search ran out of fuel.
    #[error("resource exhausted: {0}")]
    Resource(String),

    /// An invariant the library maintains internally was broken.
    #[error("internal error: {0}")]
    Internal(String),
}

pub type Result<T> = std::result::Result<T, Error>;
