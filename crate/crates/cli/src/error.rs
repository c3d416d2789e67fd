use std::path::PathBuf;

use airyexp_core::error::{ExpansionError, NumericError, RingError};

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error(transparent)]
    Expansion(#[from] ExpansionError),
    #[error(transparent)]
    Numeric(#[from] NumericError),
    #[error("cannot parse expression: {0}")]
    Parse(#[from] RingError),
    #[error("cache directory {path}: {source}")]
    Cache {
        path: PathBuf,
        source: std::io::Error,
    },
    #[error("cache entry {path} is unreadable: {source}")]
    CacheFormat {
        path: PathBuf,
        source: serde_json::Error,
    },
    #[error("residue oracle and recursion disagree")]
    OracleMismatch,
}

impl CliError {
    /// 2 for usage and argument parse errors, 1 for everything else.
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) | CliError::Parse(_) => 2,
            _ => 1,
        }
    }
}
