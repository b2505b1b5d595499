use thiserror::Error;

/// Errors raised while building rings or analysing them.
#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid ring spec: {0}")]
    InvalidSpec(String),

    #[error("parse error at position {pos}: {msg}")]
    Parse { pos: usize, msg: String },

    #[error("cap exceeded: {0}")]
    CapExceeded(String),

    #[error("non-confluent presentation: {0}; complete the relation list and retry")]
    NonConfluent(String),

    #[error("domain error: {0}")]
    Domain(String),

    #[error("internal consistency failure: {0}")]
    Inconsistent(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

impl Error {
    pub(crate) fn parse(pos: usize, msg: impl Into<String>) -> Self {
        Error::Parse {
            pos,
            msg: msg.into(),
        }
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
