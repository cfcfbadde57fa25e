use std::path::PathBuf;

use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
    #[error("{path}:{line}:{column}: {message}")]
    Parse {
        path: PathBuf,
        line: usize,
        column: usize,
        message: String,
    },
    /// A name that no section defines, or a cycle of definitions.
    #[error("{0}")]
    Reference(String),
    #[error("{0}")]
    Usage(String),
    #[error("validation failed:\n{0}")]
    Invalid(String),
    /// A law or theorem check failed; the report has already been printed.
    #[error("{0}")]
    Failed(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Failed(_) => 1,
            CliError::Invalid(_) => 2,
            CliError::Io { .. } | CliError::Parse { .. } | CliError::Reference(_) | CliError::Usage(_) => 3,
        }
    }
}
