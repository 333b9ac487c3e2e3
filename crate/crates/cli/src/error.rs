use std::io;

use thiserror::Error;

/// Process exit statuses.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ExitStatus {
    Success = 0,
    VerifyFailed = 1,
    Usage = 2,
    Domain = 3,
    Consistency = 4,
}

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error(transparent)]
    Library(#[from] cvtele::Error),
    #[error("routes disagree:\n{0}")]
    RouteDisagreement(String),
    #[error("verification failed: {0} check(s) outside tolerance")]
    VerifyFailed(usize),
    #[error("i/o: {0}")]
    Io(#[from] io::Error),
    #[error("json: {0}")]
    Json(#[from] serde_json::Error),
}

impl CliError {
    pub fn status(&self) -> ExitStatus {
        use cvtele::Error as E;
        match self {
            CliError::Usage(_) => ExitStatus::Usage,
            CliError::VerifyFailed(_) => ExitStatus::VerifyFailed,
            CliError::RouteDisagreement(_) => ExitStatus::Consistency,
            CliError::Library(e) => match e {
                E::Domain(_) | E::Validation(_) | E::Unsupported(_) | E::Herald(_) | E::Truncation { .. } => {
                    ExitStatus::Domain
                }
                E::Evaluation { .. } | E::NoConvergence { .. } | E::Inconsistent { .. } | E::Numeric(_) => {
                    ExitStatus::Consistency
                }
            },
            CliError::Io(_) => ExitStatus::Usage,
            CliError::Json(_) => ExitStatus::Consistency,
        }
    }
}

pub type CliResult<T> = std::result::Result<T, CliError>;
