use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("parse error on line {line}: {msg}")]
    Parse { line: usize, msg: String },

    #[error("invalid input: {0}")]
    Validation(String),

    #[error("ratio is undefined for an empty node set")]
    UndefinedRatio,

    #[error("domain error: {0}")]
    Domain(String),

    #[error("degenerate input: {0}")]
    Degenerate(String),

    #[error(
        "arithmetic overflow while {0}; reduce edge or node weight magnitudes and retry"
    )]
    Overflow(&'static str),

    #[error("solver contract violated: {0}")]
    Contract(String),

    #[error("exhaustive search limited to {limit} candidate nodes, got {got}")]
    TooLarge { limit: usize, got: usize },

    #[error("envelope is empty")]
    EmptyEnvelope,
}

impl Error {
    pub(crate) fn parse(line: usize, msg: impl Into<String>) -> Self {
        Error::Parse {
            line,
            msg: msg.into(),
        }
    }
}
