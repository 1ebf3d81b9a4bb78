use quotlab_core::Error;

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error(transparent)]
    Core(#[from] Error),
    #[error("io error: {0}")]
    Io(#[from] std::io::Error),
    #[error("json error: {0}")]
    Json(#[from] serde_json::Error),
    #[error("csv error: {0}")]
    Csv(#[from] csv::Error),
    #[error("malformed checkpoint {path}: {reason}")]
    Checkpoint { path: String, reason: String },
}

impl CliError {
    /// 1 for a violated invariant, 2 for anything the caller got wrong.
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Core(
                Error::NonIntegralOrbitCount { .. } | Error::DimensionMismatch { .. },
            ) => 1,
            _ => 2,
        }
    }
}
