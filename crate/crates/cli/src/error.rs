use thiserror::Error;

use vtc::cayley::CayleyError;
use vtc::families::FamilyError;
use vtc::format::FormatError;
use vtc::numgap::NumGapError;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("instance: {0}")]
    Instance(String),
    #[error("{0}")]
    Usage(String),
    #[error("{operation}: {message}")]
    Analysis { operation: &'static str, message: String },
    #[error(transparent)]
    Io(#[from] std::io::Error),
    #[error(transparent)]
    Format(#[from] FormatError),
    #[error(transparent)]
    Cayley(#[from] CayleyError),
    #[error(transparent)]
    Family(#[from] FamilyError),
    #[error(transparent)]
    NumGap(#[from] NumGapError),
}

impl CliError {
    pub fn analysis(operation: &'static str, e: impl std::fmt::Display) -> Self {
        CliError::Analysis { operation, message: e.to_string() }
    }
}
