use std::fmt;

/// Failures of a command, each mapped to a stable exit code.
#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("parse error at line {line}, column {column}: {message}")]
    Parse {
        line: u64,
        column: usize,
        message: String,
    },

    #[error("{0}: file has no data rows")]
    EmptyFile(String),

    #[error("configuration error: {0}")]
    Config(String),

    #[error("{path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },

    #[error(transparent)]
    Library(#[from] tvreg::Error),
}

impl CliError {
    pub fn config(msg: impl fmt::Display) -> Self {
        CliError::Config(msg.to_string())
    }

    /// 2 for unreadable input, 3 for numerical failures, 4 for bad configuration.
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Parse { .. } | CliError::EmptyFile(_) => 2,
            CliError::Library(e) if e.is_numerical() => 3,
            CliError::Library(_) | CliError::Config(_) | CliError::Io { .. } => 4,
        }
    }
}

pub type CliResult<T> = Result<T, CliError>;
