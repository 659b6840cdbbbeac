use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid input: {0}")]
    InvalidInput(String),

    #[error("invalid sampling plan: {0}")]
    InvalidPlan(String),

    #[error("training data is empty")]
    EmptyData,

    #[error("linear system is singular: factorization failed after jitter {jitter:e}")]
    SingularSystem { jitter: f64 },

    #[error("confidence 1 - 4/sqrt(n) is not positive for n = {n} (need n >= 17)")]
    ConfidenceUndefined { n: usize },

    #[error("experiment failed at n = {n}, iteration {iteration}, stage {stage}: {source}")]
    Experiment {
        n: usize,
        iteration: usize,
        /// Kernel family being selected, or `data` for training-set generation.
        stage: String,
        #[source]
        source: Box<Error>,
    },

    #[error("parse error: {0}")]
    Parse(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),

    #[error(transparent)]
    Csv(#[from] csv::Error),
}

impl Error {
    pub(crate) fn invalid(msg: impl Into<String>) -> Self {
        Error::InvalidInput(msg.into())
    }

    /// True for failures of the numerics rather than of the inputs or I/O.
    pub fn is_numeric(&self) -> bool {
        match self {
            Error::SingularSystem { .. } | Error::ConfidenceUndefined { .. } => true,
            Error::Experiment { source, .. } => source.is_numeric(),
            _ => false,
        }
    }
}
