use thiserror::Error;

/// Errors produced anywhere in the pipeline.
///
/// The variants fall into three families that the command-line front end maps
/// to distinct exit codes: resource limits, malformed input, and internal
/// consistency failures.
#[derive(Debug, Error)]
pub enum Error {
    #[error("group order exceeds the configured cap of {cap}")]
    OrderCap { cap: usize },

    #[error("syntax error at position {pos}: {msg}")]
    Syntax { pos: usize, msg: String },

    #[error("unknown group family `{0}`")]
    UnknownFamily(String),

    #[error("{0} is not prime")]
    NotPrime(u64),

    #[error("generators act on different domains ({0} vs {1} points)")]
    DomainMismatch(usize, usize),

    #[error("invalid permutation: {0}")]
    InvalidPerm(String),

    #[error("division by zero")]
    DivisionByZero,

    #[error("value is not integral at p = {p}: {value}")]
    Valuation { p: u64, value: String },

    #[error("character table rejected: {0}")]
    TableRejected(String),

    #[error("invalid input: {0}")]
    Input(String),

    #[error("internal consistency error: {0}")]
    Consistency(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

impl Error {
    /// Process exit code for this error class.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::OrderCap { .. } => 2,
            Error::Consistency(_) | Error::Valuation { .. } => 4,
            _ => 3,
        }
    }

    pub(crate) fn consistency(msg: impl Into<String>) -> Self {
        Error::Consistency(msg.into())
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
