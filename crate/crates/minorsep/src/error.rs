use std::path::PathBuf;

use thiserror::Error;

/// Everything the command line can fail with, mapped onto exit codes by
/// [`CliError::exit_code`].
#[derive(Debug, Error)]
pub enum CliError {
    #[error("{}: {source}", path.display())]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },
    #[error("bad certificate: {0}")]
    Certificate(String),
    #[error("{0}")]
    Usage(String),
    #[error(transparent)]
    Core(#[from] minorsep_core::Error),
}

impl CliError {
    pub fn io(path: impl Into<PathBuf>, source: std::io::Error) -> Self {
        CliError::Io {
            path: path.into(),
            source,
        }
    }

    pub fn parse(line: usize, message: impl Into<String>) -> Self {
        CliError::Parse {
            line,
            message: message.into(),
        }
    }

    /// 3 for internal failures (a run that could not certify itself), 2 for
    /// everything caused by the input.
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Core(minorsep_core::Error::Logic(_)) => crate::cli::EXIT_SELF_CHECK,
            _ => crate::cli::EXIT_INPUT,
        }
    }
}

pub type Result<T, E = CliError> = std::result::Result<T, E>;
