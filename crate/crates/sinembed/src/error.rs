use std::io;
use std::path::PathBuf;

use thiserror::Error;

/// Failures of the harness: library errors plus file handling.
#[derive(Debug, Error)]
pub enum HarnessError {
    #[error(transparent)]
    Core(#[from] sinembed_core::Error),
    #[error("{path}: {source}")]
    Io { path: PathBuf, source: io::Error },
    #[error("{path}:{line}: {msg}")]
    Parse { path: PathBuf, line: usize, msg: String },
    #[error("{0}")]
    Usage(String),
}

impl HarnessError {
    pub fn usage(msg: impl Into<String>) -> Self {
        HarnessError::Usage(msg.into())
    }

    /// Process exit status: 2 for parameter-domain errors, 3 for guard
    /// violations, 1 for IO failures.
    pub fn exit_code(&self) -> i32 {
        match self {
            HarnessError::Core(e) if !e.is_domain() => 3,
            HarnessError::Core(_) | HarnessError::Parse { .. } | HarnessError::Usage(_) => 2,
            HarnessError::Io { .. } => 1,
        }
    }
}

pub type Result<T> = std::result::Result<T, HarnessError>;
