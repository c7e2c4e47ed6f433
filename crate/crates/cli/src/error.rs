use std::path::PathBuf;

use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Domain(#[from] pathtri_core::Error),

    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        source: std::io::Error,
    },

    #[error("{context}: {message}")]
    Schema { context: String, message: String },

    #[error("{0}")]
    Usage(String),
}

impl CliError {
    pub fn schema(context: impl Into<String>, message: impl ToString) -> Self {
        CliError::Schema {
            context: context.into(),
            message: message.to_string(),
        }
    }

    /// 1 for geometric or topological failures, 2 for everything about
    /// files, formats and flags.
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Domain(_) => 1,
            CliError::Io { .. } | CliError::Schema { .. } | CliError::Usage(_) => 2,
        }
    }
}
