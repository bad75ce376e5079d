//! Error type shared across the crate.

use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid field parameters: {0}")]
    InvalidField(String),

    #[error("polynomial config line {line}: {msg}")]
    ConfigParse { line: usize, msg: String },

    #[error("defining set {spec} is empty at m={m}")]
    EmptyDefiningSet { m: u32, spec: String },

    #[error("m={0} is even; closed forms require odd m")]
    EvenM(u32),

    #[error("out of theorem scope: {0}")]
    OutOfTheoremScope(String),

    #[error("code has no nonzero-weight codeword")]
    ZeroCode,

    #[error("counting identity violated: {0}")]
    IdentityViolation(String),

    #[error("comparison shape mismatch: {0}")]
    ShapeMismatch(String),

    #[error("internal assertion: {0}")]
    Internal(String),
}

pub type Result<T> = std::result::Result<T, Error>;
