use thiserror::Error;

/// Errors raised across the crate.
#[derive(Debug, Error)]
pub enum Error {
    #[error("duplicate label `{0}`")]
    DuplicateLabel(String),

    #[error("unknown label `{0}`")]
    UnknownLabel(String),

    #[error("antisymmetry violation: `{0}` and `{1}` are distinct but mutually below each other")]
    AntisymmetryViolation(String, String),

    #[error("{what} exceeds the configured limit ({actual} > {limit})")]
    SizeLimitExceeded {
        what: &'static str,
        limit: usize,
        actual: usize,
    },

    #[error("element belongs to a different frame")]
    FrameMismatch,

    #[error("`{op}` expects {expected} argument(s), got {got}")]
    Arity {
        op: &'static str,
        expected: &'static str,
        got: usize,
    },

    #[error("table is not total: expected {expected} entries, got {got}")]
    NotTotal { expected: usize, got: usize },

    #[error("not a nucleus: {0}")]
    InvalidNucleus(String),

    #[error("invalid tree: {0}")]
    InvalidTree(String),

    #[error("syntax error at offset {offset}: {message}")]
    Syntax { offset: usize, message: String },

    #[error("unknown constant `{0}`")]
    UnknownConstant(String),

    #[error("evaluation of `{0}` did not reach a normal form within the fuel budget")]
    Diverged(String),

    #[error("internal invariant violated: {0}")]
    InternalInvariant(String),

    #[error("malformed input: {0}")]
    Format(String),

    #[error(transparent)]
    Json(#[from] serde_json::Error),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
