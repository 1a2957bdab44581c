use std::io;

/// Failure of one command, carrying the process exit code it maps to.
#[derive(Debug, thiserror::Error)]
pub enum CliError {
    /// Bad flags or arguments (exit 1).
    #[error("{0}")]
    Usage(String),
    /// Unreadable or malformed input (exit 2).
    #[error("{0}")]
    Input(String),
    /// Two computations that must agree did not, or a histogram was
    /// internally inconsistent (exit 3).
    #[error("{0}")]
    Consistency(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) => 1,
            CliError::Input(_) => 2,
            CliError::Consistency(_) => 3,
        }
    }
}

impl From<cooccur::Error> for CliError {
    fn from(e: cooccur::Error) -> Self {
        match e {
            cooccur::Error::Inconsistent { .. } | cooccur::Error::GapTooLong { .. } => {
                CliError::Consistency(e.to_string())
            }
            _ => CliError::Usage(e.to_string()),
        }
    }
}

impl From<io::Error> for CliError {
    fn from(e: io::Error) -> Self {
        CliError::Input(e.to_string())
    }
}
