use crate::identities::CheckReport;

/// Failure classes. The CLI maps these onto its exit codes.
#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },

    #[error("grading violated: {0}")]
    Grading(String),

    #[error("bilinear form is degenerate")]
    DegenerateForm,

    #[error("{what} failed")]
    Validation { what: String, report: Box<CheckReport> },

    #[error("precondition failed: {0}")]
    Precondition(String),

    #[error("inconclusive: {0}")]
    Inconclusive(String),

    #[error("parse error: {0}")]
    Parse(String),
}

impl Error {
    pub fn validation(what: impl Into<String>, report: CheckReport) -> Self {
        Error::Validation {
            what: what.into(),
            report: Box::new(report),
        }
    }

    pub fn precondition(msg: impl Into<String>) -> Self {
        Error::Precondition(msg.into())
    }

    /// Exit status used by the command-line front end.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::Parse(_) => 2,
            Error::DimensionMismatch { .. } | Error::Grading(_) | Error::Validation { .. } => 3,
            Error::DegenerateForm | Error::Precondition(_) => 4,
            Error::Inconclusive(_) => 5,
        }
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
