use thiserror::Error;

/// Everything that can go wrong while building or analysing a tower.
#[derive(Debug, Error)]
pub enum Error {
    /// The tower description is malformed or violates a standing assumption.
    #[error("invalid tower spec: {0}")]
    InvalidSpec(String),
    /// An internal cross-check failed. These indicate a defect, not bad input.
    #[error("consistency check failed: {0}")]
    Consistency(String),
    /// The requested level or precision exceeds the configured size bounds.
    #[error("infeasible: {0}")]
    Infeasible(String),
    /// Malformed arguments to a library call.
    #[error("invalid input: {0}")]
    Input(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
    #[error(transparent)]
    Csv(#[from] csv::Error),
}

impl Error {
    /// Process exit code used by the command-line front end.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::InvalidSpec(_) => 2,
            Error::Consistency(_) => 3,
            Error::Infeasible(_) => 4,
            _ => 1,
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
