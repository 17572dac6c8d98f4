use genstirling::Error;
use thiserror::Error;

/// Failures of a command, each mapped to a process exit code.
#[derive(Debug, Error)]
pub enum CliError {
    /// Invalid flags or parameter combinations; exit code 2.
    #[error("invalid configuration: {0}")]
    Config(String),

    /// A guarded denominator vanished for the given parameters; exit code 3.
    #[error("{0}")]
    Degenerate(Error),

    /// At least one check failed; the report is already written. Exit code 1.
    #[error("{failed} check(s) failed")]
    CheckFailed { failed: usize },

    #[error("cannot write output: {0}")]
    Io(#[from] std::io::Error),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::CheckFailed { .. } => 1,
            CliError::Config(_) | CliError::Io(_) => 2,
            CliError::Degenerate(_) => 3,
        }
    }
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        match e {
            Error::DegenerateParameters { .. } | Error::DegenerateSequence(_) | Error::DivisionByZero => {
                CliError::Degenerate(e)
            }
            other => CliError::Config(other.to_string()),
        }
    }
}

pub type CliResult<T> = std::result::Result<T, CliError>;
