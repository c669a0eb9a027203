use std::fmt::Display;

/// Failure classes, each with a fixed exit code.
#[derive(Debug, thiserror::Error)]
pub enum CliError {
    /// Bad or inconsistent flags.
    #[error("usage: {0}")]
    Usage(String),
    /// Unreadable or malformed input, or an output that cannot be written.
    #[error("{0}")]
    Data(String),
    /// A run completed but fell below its pass threshold.
    #[error("threshold: {0}")]
    Threshold(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) => 1,
            CliError::Data(_) => 2,
            CliError::Threshold(_) => 3,
        }
    }

    pub fn usage(msg: impl Display) -> Self {
        CliError::Usage(msg.to_string())
    }
}

impl From<coning_core::Error> for CliError {
    fn from(e: coning_core::Error) -> Self {
        CliError::Data(e.to_string())
    }
}

impl From<coning_experiments::Error> for CliError {
    fn from(e: coning_experiments::Error) -> Self {
        CliError::Data(e.to_string())
    }
}

pub type CliResult<T> = Result<T, CliError>;
