use std::io;

use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("{0}")]
    Input(String),
    #[error("{0}")]
    Numeric(String),
    #[error("{context}: {source}")]
    Io {
        context: String,
        #[source]
        source: io::Error,
    },
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Usage(_) => 1,
            CliError::Input(_) | CliError::Io { .. } => 2,
            CliError::Numeric(_) => 3,
        }
    }

    pub fn io(context: impl Into<String>, source: io::Error) -> Self {
        CliError::Io {
            context: context.into(),
            source,
        }
    }
}

impl From<tlt_core::Error> for CliError {
    fn from(e: tlt_core::Error) -> Self {
        match e {
            tlt_core::Error::Domain(m) => CliError::Usage(m),
            tlt_core::Error::Input(m) => CliError::Input(m),
            tlt_core::Error::Numeric(m) => CliError::Numeric(m),
        }
    }
}

impl From<csv::Error> for CliError {
    fn from(e: csv::Error) -> Self {
        CliError::Input(e.to_string())
    }
}

impl From<serde_json::Error> for CliError {
    fn from(e: serde_json::Error) -> Self {
        CliError::Input(format!("JSON serialization failed: {e}"))
    }
}

pub type CliResult<T> = Result<T, CliError>;
