use std::path::PathBuf;

use antidiag_core::Error as CoreError;

/// Process exit statuses.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum Status {
    Pass = 0,
    Fail = 1,
    Parse = 2,
    Solver = 3,
    Precondition = 4,
}

impl Status {
    pub fn code(self) -> u8 {
        self as u8
    }
}

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("cannot read {path}: {source}")]
    Read {
        path: PathBuf,
        source: std::io::Error,
    },
    #[error("cannot write {path}: {source}")]
    Write {
        path: PathBuf,
        source: std::io::Error,
    },
    #[error("parse error: {0}")]
    Parse(String),
    #[error("solver failure: {0}")]
    Solver(CoreError),
    #[error("precondition violated: {0}")]
    Precondition(String),
}

impl CliError {
    pub fn status(&self) -> Status {
        match self {
            Self::Read { .. } | Self::Parse(_) => Status::Parse,
            Self::Write { .. } | Self::Solver(_) => Status::Solver,
            Self::Precondition(_) => Status::Precondition,
        }
    }
}

impl From<CoreError> for CliError {
    fn from(e: CoreError) -> Self {
        match e {
            CoreError::NoConvergence { .. }
            | CoreError::TooLarge { .. }
            | CoreError::SingularMatrix => Self::Solver(e),
            other => Self::Precondition(other.to_string()),
        }
    }
}
