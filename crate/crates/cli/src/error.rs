use std::path::PathBuf;

use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("invalid input: {0}")]
    Invalid(String),

    #[error(
        "resource limit: tensor space of dimension {requested} exceeds {limit} (raise PBWFORGE_MAX_DIM to allow it)"
    )]
    Resource { requested: u128, limit: u128 },

    #[error("{}: {source}", path.display())]
    Io { path: PathBuf, source: std::io::Error },

    #[error(transparent)]
    Core(#[from] pbwforge_core::Error),
}

impl CliError {
    /// 2 for bad input or I/O, 3 for resource limits, 4 for a broken engine invariant.
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Invalid(_) | CliError::Io { .. } => 2,
            CliError::Resource { .. } => 3,
            CliError::Core(pbwforge_core::Error::ResourceLimit { .. }) => 3,
            CliError::Core(pbwforge_core::Error::Invariant(_)) => 4,
            CliError::Core(_) => 2,
        }
    }
}
