use alloc::boxed::Box;

use crate::estimators::EstimationResult;

pub type Result<T, E = Error> = core::result::Result<T, E>;

#[derive(Debug, Clone, thiserror::Error)]
pub enum Error {
    #[error("{what} = {value} is outside its domain")]
    Domain { what: &'static str, value: f64 },

    #[error("level {0} must lie strictly between 0 and 1")]
    InvalidLevel(f64),

    #[error("quadrant index {l} out of range for oracle factor {big_k}")]
    QuadrantOutOfRange { l: u64, big_k: u64 },

    #[error("oracle factor {0} must be odd and positive")]
    EvenOracleFactor(u64),

    #[error("sample is degenerate after clamping; cannot fit a beta distribution")]
    DegenerateSample,

    #[error("prior transform is singular at posterior mean {0}")]
    SingularTransform(f64),

    #[error("invalid configuration: {0}")]
    InvalidConfig(&'static str),

    #[error("Grover depth cap reached after {} stages before the target radius", .0.stages.len())]
    BudgetExceeded(Box<EstimationResult>),
}
