use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("usage: {0}")]
    Usage(String),
    #[error("computation failed: {0}")]
    Computation(#[from] cutoff_coulomb_core::Error),
    /// A record was written without one of its optional values.
    #[error("incomplete record: {0}")]
    Incomplete(String),
    #[error("verification failed: {0}")]
    Verification(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) => 1,
            CliError::Computation(_) | CliError::Incomplete(_) | CliError::Io(_) | CliError::Json(_) => 2,
            CliError::Verification(_) => 3,
        }
    }

    /// Maps input-validation failures of the core types to usage errors.
    pub fn usage_from(err: cutoff_coulomb_core::Error) -> Self {
        CliError::Usage(err.to_string())
    }
}

pub type CliResult<T> = Result<T, CliError>;
