use std::path::PathBuf;

#[derive(Debug, thiserror::Error)]
pub enum BenchError {
    #[error(transparent)]
    Core(#[from] qae_core::Error),
    #[error("{}: {source}", path.display())]
    Io {
        path: PathBuf,
        source: std::io::Error,
    },
    #[error("{}: {source}", path.display())]
    Csv { path: PathBuf, source: csv::Error },
    #[error("{}: {source}", path.display())]
    Json {
        path: PathBuf,
        source: serde_json::Error,
    },
    #[error("empty input: {0}")]
    Empty(&'static str),
    #[error("invalid input: {0}")]
    Invalid(String),
    #[error("budget exceeded: {0}")]
    BudgetExceeded(String),
    #[error("rank-deficient fit input")]
    RankDeficient,
    #[error("unknown method `{0}`")]
    UnknownMethod(String),
}

impl BenchError {
    /// Whether the error stems from a run stopping at the depth cap.
    pub fn is_budget_exceeded(&self) -> bool {
        matches!(
            self,
            BenchError::BudgetExceeded(_) | BenchError::Core(qae_core::Error::BudgetExceeded(_))
        )
    }
}

pub type Result<T> = core::result::Result<T, BenchError>;
