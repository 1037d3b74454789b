use thiserror::Error;
use wordmaps_core::group::GroupError;
use wordmaps_core::nilpotent::NilpotentError;
use wordmaps_core::omega::OmegaError;
use wordmaps_core::word::WordError;

/// Exit status for a usage or input error.
pub const EXIT_USAGE: i32 = 1;
/// Exit status for a failed internal consistency check.
pub const EXIT_INVARIANT: i32 = 2;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("invariant violated: {0}")]
    Invariant(String),
}

impl CliError {
    pub fn status(&self) -> i32 {
        match self {
            CliError::Usage(_) => EXIT_USAGE,
            CliError::Invariant(_) => EXIT_INVARIANT,
        }
    }
}

impl From<GroupError> for CliError {
    fn from(e: GroupError) -> Self {
        CliError::Usage(e.to_string())
    }
}

impl From<WordError> for CliError {
    fn from(e: WordError) -> Self {
        match e {
            WordError::InvariantViolation(m) => CliError::Invariant(m),
            other => CliError::Usage(other.to_string()),
        }
    }
}

impl From<NilpotentError> for CliError {
    fn from(e: NilpotentError) -> Self {
        match e {
            NilpotentError::InvariantViolation(m) => CliError::Invariant(m),
            other => CliError::Usage(other.to_string()),
        }
    }
}

impl From<OmegaError> for CliError {
    fn from(e: OmegaError) -> Self {
        match e {
            OmegaError::Nilpotent(inner) => inner.into(),
            other => CliError::Usage(other.to_string()),
        }
    }
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> Self {
        CliError::Usage(e.to_string())
    }
}

impl From<serde_json::Error> for CliError {
    fn from(e: serde_json::Error) -> Self {
        CliError::Usage(format!("group file: {e}"))
    }
}
