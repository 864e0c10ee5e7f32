use thiserror::Error;

/// Errors surfaced by the command-line tool, each mapped to an exit code.
#[derive(Debug, Error)]
pub enum CliError {
    #[error("usage: {0}")]
    Usage(String),

    #[error("configuration: {0}")]
    Config(String),

    #[error("line {line}: {message}")]
    Format { line: u64, message: String },

    #[error("line {line}: timestamp not strictly increasing")]
    Ordering { line: u64 },

    #[error("line {line}: cannot parse field '{field}' ({value:?})")]
    Parse { line: u64, field: &'static str, value: String },

    #[error("input: {0}")]
    Input(String),

    #[error("numerical failure: {0}")]
    Numerical(String),

    #[error("property suite failed: {0}")]
    VerifyFailed(String),

    #[error("output: {0}")]
    Output(#[from] std::io::Error),
}

impl CliError {
    /// 0 success, 1 usage/config, 2 input format, 3 numerical failure.
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) | CliError::Config(_) | CliError::Output(_) => 1,
            CliError::Format { .. } | CliError::Ordering { .. } | CliError::Parse { .. } | CliError::Input(_) => 2,
            CliError::Numerical(_) | CliError::VerifyFailed(_) => 3,
        }
    }
}

impl From<rotkin::Error> for CliError {
    fn from(e: rotkin::Error) -> Self {
        use rotkin::Error as E;
        match e {
            E::EmptyLog | E::NonMonotonic { .. } | E::FrameMismatch { .. } | E::InvalidInput(_) => {
                CliError::Input(e.to_string())
            }
            _ => CliError::Numerical(e.to_string()),
        }
    }
}
