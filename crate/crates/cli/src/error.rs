use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },
    #[error("{0}")]
    Format(String),
    #[error(transparent)]
    Core(#[from] hder::Error),
    /// The input is well-formed but fails validation; carries a report.
    #[error("invalid input\n{0}")]
    Invalid(String),
    #[error("verification failed: {0}")]
    Verification(String),
}

impl CliError {
    /// 1 for I/O and parse errors, 2 for inputs failing validation, 3 when a
    /// result fails its verification.
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Io { .. } | CliError::Format(_) => 1,
            CliError::Core(hder::Error::LeibnizViolated { .. }) | CliError::Invalid(_) => 2,
            CliError::Core(hder::Error::Internal(_)) | CliError::Verification(_) => 3,
            CliError::Core(_) => 1,
        }
    }
}
