use expknap_core::Error;

/// Failure of one command, split by exit code.
#[derive(Debug)]
pub enum CliError {
    /// Bad or contradictory flags (exit 2).
    Usage(String),
    /// Unreadable input, invalid data, failed output (exit 1).
    Runtime(String),
}

impl From<Error> for CliError {
    fn from(err: Error) -> Self {
        match err {
            Error::InvalidArgument(_) | Error::UnknownAlgorithm(_) | Error::CapacityDomain { .. } => {
                CliError::Usage(err.to_string())
            }
            other => CliError::Runtime(other.to_string()),
        }
    }
}
