use thiserror::Error;

/// Errors raised by the library. The CLI maps every variant to a usage error
/// except where noted.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("variable registry mismatch")]
    RegistryMismatch,
    #[error("unknown variable `{0}`")]
    UnknownVariable(String),
    #[error("duplicate variable `{0}`")]
    DuplicateVariable(String),
    #[error("precondition failed: {0}")]
    Precondition(String),
    #[error("divergent plethystic input: {0}")]
    Divergence(String),
    #[error("character has a zero-weight part of multiplicity {0}")]
    FixedPart(i64),
    #[error("evaluation hit a vanishing factor at {0}")]
    Singular(String),
    #[error("invalid input: {0}")]
    Invalid(String),
}

pub type Result<T> = std::result::Result<T, Error>;
