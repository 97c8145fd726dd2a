use std::path::PathBuf;

use ccd_core::CcdError;

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("{}: {source}", path.display())]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
    #[error("{}:{line}:{column}: {message}", path.display())]
    Parse {
        path: PathBuf,
        line: u64,
        column: usize,
        message: String,
    },
    #[error("{}: {message}", path.display())]
    Format { path: PathBuf, message: String },
    #[error(transparent)]
    Core(#[from] CcdError),
    #[error("internal error: {0}")]
    Internal(String),
}

impl CliError {
    /// 1 usage/config, 2 I/O or parse, 3 internal.
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Usage(_) => 1,
            CliError::Io { .. } | CliError::Parse { .. } | CliError::Format { .. } => 2,
            CliError::Core(e) => match e {
                CcdError::InvalidParameter { .. }
                | CcdError::UnsupportedLayout { .. }
                | CcdError::UnsupportedDimension(_)
                | CcdError::TooFewPoints { .. }
                | CcdError::Infeasible(_) => 1,
                _ => 3,
            },
            CliError::Internal(_) => 3,
        }
    }

    pub(crate) fn io(path: impl Into<PathBuf>, source: std::io::Error) -> Self {
        CliError::Io {
            path: path.into(),
            source,
        }
    }
}

pub type Result<T, E = CliError> = std::result::Result<T, E>;
