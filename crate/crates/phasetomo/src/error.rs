use std::path::PathBuf;

use thiserror::Error;

/// Failures that end a command with exit code 1.
#[derive(Debug, Error)]
pub enum CliError {
    #[error("{path}: {message}")]
    Config { path: String, message: String },
    #[error("invalid {field}: {message}")]
    Invalid { field: String, message: String },
    #[error(transparent)]
    Compute(#[from] phasetomo_core::Error),
    /// At least one verification case could not be computed; `files` still
    /// holds the report of every case.
    #[error("{message}")]
    CaseFailed { message: String, files: Vec<(String, String)> },
    #[error("{}: {source}", path.display())]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
}

impl CliError {
    pub fn invalid(field: impl Into<String>, message: impl std::fmt::Display) -> Self {
        CliError::Invalid {
            field: field.into(),
            message: message.to_string(),
        }
    }
}

pub type CliResult<T> = Result<T, CliError>;
