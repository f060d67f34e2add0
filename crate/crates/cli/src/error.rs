use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("usage: {0}")]
    Usage(String),

    #[error("numerical failure at {point}: {message}")]
    Numerical { point: String, message: String },

    #[error("verification failed: {0}")]
    Mismatch(String),

    #[error("i/o: {0}")]
    Io(#[from] std::io::Error),
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Usage(_) => 2,
            CliError::Numerical { .. } => 3,
            CliError::Mismatch(_) | CliError::Io(_) => 1,
        }
    }
}
