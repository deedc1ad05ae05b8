use std::io;

use ifm_core::IfmError;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),

    #[error(transparent)]
    Model(#[from] IfmError),

    #[error("config: {0}")]
    Config(String),

    #[error("i/o: {0}")]
    Io(#[from] io::Error),

    #[error("encoding: {0}")]
    Encode(String),
}

impl CliError {
    /// 2 for anything the caller can fix by changing arguments or inputs, 1 otherwise.
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Usage(_) | CliError::Model(_) | CliError::Config(_) => 2,
            CliError::Io(_) | CliError::Encode(_) => 1,
        }
    }
}

impl From<csv::Error> for CliError {
    fn from(e: csv::Error) -> Self {
        CliError::Encode(e.to_string())
    }
}

impl From<serde_json::Error> for CliError {
    fn from(e: serde_json::Error) -> Self {
        CliError::Encode(e.to_string())
    }
}

pub type CliResult<T> = Result<T, CliError>;
