use std::path::PathBuf;

use thiserror::Error;

use hsuper_core::{CatalogError, DeformationError, NormalizeError};

/// Everything that can end a command early. Each variant owns one stable
/// exit code (see [`CliError::exit_code`]).
#[derive(Debug, Error)]
pub enum CliError {
    #[error("{}: {source}", path.display())]
    Io { path: PathBuf, source: std::io::Error },
    #[error("{0}")]
    Usage(String),
    #[error("{context}: {message}")]
    Parse { context: String, message: String },
    #[error("{context}: {message}")]
    Invariant { context: String, message: String },
    #[error("{0}")]
    CheckFailed(String),
    #[error("{0}")]
    NoWitness(String),
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Io { .. } => 1,
            CliError::Usage(_) => 2,
            CliError::Parse { .. } => 3,
            CliError::Invariant { .. } => 4,
            CliError::CheckFailed(_) => 5,
            CliError::NoWitness(_) => 6,
        }
    }

    pub fn parse(context: impl Into<String>, message: impl ToString) -> Self {
        CliError::Parse {
            context: context.into(),
            message: message.to_string(),
        }
    }

    pub fn invariant(context: impl Into<String>, message: impl ToString) -> Self {
        CliError::Invariant {
            context: context.into(),
            message: message.to_string(),
        }
    }
}

impl From<CatalogError> for CliError {
    fn from(e: CatalogError) -> Self {
        match e {
            CatalogError::Constraint { .. } => CliError::invariant("catalog", e),
            _ => CliError::Usage(e.to_string()),
        }
    }
}

impl From<DeformationError> for CliError {
    fn from(e: DeformationError) -> Self {
        match e {
            DeformationError::NotAlphaCompatible | DeformationError::NotCocycle | DeformationError::NotIntegrable => {
                CliError::CheckFailed(e.to_string())
            }
            _ => CliError::invariant("deformation", e),
        }
    }
}

impl From<NormalizeError> for CliError {
    fn from(e: NormalizeError) -> Self {
        match e {
            NormalizeError::WrongDimension(_) | NormalizeError::UnsupportedParity(_) => {
                CliError::invariant("normalize", e)
            }
            NormalizeError::NoRationalIsotropicVector => CliError::NoWitness(e.to_string()),
            _ => CliError::CheckFailed(e.to_string()),
        }
    }
}
