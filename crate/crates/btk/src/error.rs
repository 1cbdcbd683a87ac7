use thiserror::Error;

/// Errors raised by the toolkit.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum BtkError {
    #[error("invalid input: {0}")]
    InvalidInput(String),
    #[error("singular data: {0}")]
    Singularity(String),
    #[error("certification failed: {0}")]
    Certification(String),
    #[error("no solution by this method: {0}")]
    NoSolutionByThisMethod(String),
    #[error("infeasible: {0}")]
    Infeasible(String),
    #[error("did not converge: {0}")]
    NonConvergence(String),
    #[error("internal error: {0}")]
    Internal(String),
}

pub type Result<T> = std::result::Result<T, BtkError>;

impl BtkError {
    /// Process exit code used by the command line front end.
    pub fn exit_code(&self) -> i32 {
        match self {
            BtkError::InvalidInput(_) => 2,
            BtkError::Certification(_) | BtkError::NonConvergence(_) | BtkError::Internal(_) => 3,
            BtkError::Singularity(_) | BtkError::NoSolutionByThisMethod(_) | BtkError::Infeasible(_) => 4,
        }
    }
}
