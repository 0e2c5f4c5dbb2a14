use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("{0}")]
    Capacity(String),
    #[error("invariant violated: {0}")]
    Invariant(String),
    #[error("{0}")]
    Io(#[from] std::io::Error),
    #[error("serialization failed: {0}")]
    Json(#[from] serde_json::Error),
    #[error("csv output failed: {0}")]
    Csv(#[from] csv::Error),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) => 2,
            CliError::Capacity(_) => 3,
            CliError::Invariant(_) | CliError::Io(_) | CliError::Json(_) | CliError::Csv(_) => 1,
        }
    }
}

impl From<edgewise::Error> for CliError {
    fn from(e: edgewise::Error) -> Self {
        match e {
            edgewise::Error::Capacity { .. } => CliError::Capacity(e.to_string()),
            edgewise::Error::Domain(_) => CliError::Usage(e.to_string()),
        }
    }
}

pub type CliResult<T> = std::result::Result<T, CliError>;
