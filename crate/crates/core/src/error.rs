use thiserror::Error;

/// Everything that can go wrong in this crate.
///
/// Errors split into two groups: argument errors (malformed input, unknown
/// names, missing data) and domain errors (structurally valid parameters on
/// which the requested quantity is undefined). The CLI maps the former to
/// exit code 2 and the latter to exit code 3.
#[derive(Debug, Error)]
pub enum Error {
    #[error("parse error at offset {pos}: {msg}")]
    Parse { pos: usize, msg: String },

    #[error("{0}")]
    Validation(String),

    #[error("parameter vector too short: need {needed} entries, have {got}")]
    InsufficientAlpha { needed: usize, got: usize },

    #[error("alpha values must be integers here, got {value} at index {index}")]
    NonIntegerAlpha { index: usize, value: String },

    #[error("unknown kind `{0}`")]
    UnknownKind(String),

    #[error("unknown relation `{0}`")]
    UnknownRelation(String),

    #[error("unknown identity `{0}`")]
    UnknownIdentity(String),

    #[error("matrix size mismatch: {a} vs {b}")]
    SizeMismatch { a: usize, b: usize },

    #[error("m = 0 is outside the domain of this operation")]
    ZeroModulus,

    #[error("alpha values must be pairwise distinct here: alpha[{i}] = alpha[{j}]")]
    RepeatedNodes { i: usize, j: usize },

    #[error("alpha[{index}] = 0 is outside the domain of this operation")]
    ZeroAlpha { index: usize },

    #[error("zero base with negative exponent")]
    ZeroToNegativePower,
}

impl Error {
    /// True for errors where the parameters were well formed but the value
    /// is mathematically undefined.
    pub fn is_domain(&self) -> bool {
        matches!(
            self,
            Error::ZeroModulus
                | Error::RepeatedNodes { .. }
                | Error::ZeroAlpha { .. }
                | Error::ZeroToNegativePower
        )
    }
}
