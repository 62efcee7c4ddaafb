use thiserror::Error;

/// Errors produced by the library and the command-line driver.
#[derive(Debug, Error)]
pub enum Error {
    #[error("domain error: {0}")]
    Domain(String),

    #[error("steering block is singular: minimum eigenvalue {min_eigenvalue:e} is below the 1e-10 cutoff")]
    SingularBlock { min_eigenvalue: f64 },

    #[error("symplectic eigenvalue pairing mismatch: {first} vs {second}")]
    PairingMismatch { first: f64, second: f64 },

    #[error("steering changes sign more than once on the scan grid; bracketing intervals: {intervals:?}")]
    MultiCrossing { intervals: Vec<(f64, f64)> },

    #[error("arity error: {0}")]
    Arity(String),

    #[error("parse error: {0}")]
    Parse(String),

    #[error("incomplete measurement plan: missing {0}")]
    IncompletePlan(String),

    #[error("unsupported mode count {0}; the measurement plan is defined for 4 modes")]
    UnsupportedModeCount(usize),

    #[error("I/O error: {0}")]
    Io(#[from] std::io::Error),

    #[error("JSON error: {0}")]
    Json(#[from] serde_json::Error),

    #[error("CSV error: {0}")]
    Csv(#[from] csv::Error),
}

impl Error {
    pub(crate) fn domain(msg: impl Into<String>) -> Self {
        Error::Domain(msg.into())
    }

    /// Process exit code for the CLI: 2 for parse/arity problems, 3 for
    /// numerical failures, 1 for I/O.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::Parse(_)
            | Error::Arity(_)
            | Error::Json(_)
            | Error::Csv(_)
            | Error::IncompletePlan(_)
            | Error::UnsupportedModeCount(_) => 2,
            Error::Domain(_)
            | Error::SingularBlock { .. }
            | Error::PairingMismatch { .. }
            | Error::MultiCrossing { .. } => 3,
            Error::Io(_) => 1,
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
