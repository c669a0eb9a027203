use std::path::PathBuf;

/// Errors raised by the combinatorial and codec layers.
#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error("vector must have at least one component")]
    EmptyVector,

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("dimension mismatch: expected {expected} components, got {actual}")]
    DimensionMismatch { expected: usize, actual: usize },

    #[error("component {index} is negative ({value}); only non-negative integers can be encoded")]
    NegativeComponent { index: usize, value: String },

    #[error("h-vector must start with h_0 = 1, got {0}")]
    LeadingCoefficient(String),

    #[error("malformed input{}: {message}", .path.as_ref().map(|p| format!(" in {}", p.display())).unwrap_or_default())]
    Format {
        path: Option<PathBuf>,
        message: String,
    },

    #[error("I/O error on {}: {source}", .path.display())]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
}

impl Error {
    pub(crate) fn format(message: impl Into<String>) -> Self {
        Error::Format {
            path: None,
            message: message.into(),
        }
    }

    pub(crate) fn io(path: impl Into<PathBuf>, source: std::io::Error) -> Self {
        Error::Io {
            path: path.into(),
            source,
        }
    }

    /// Attach a path to a format error that was produced without one.
    pub fn with_path(self, path: impl Into<PathBuf>) -> Self {
        match self {
            Error::Format { path: None, message } => Error::Format {
                path: Some(path.into()),
                message,
            },
            other => other,
        }
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
