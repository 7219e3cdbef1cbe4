//! Statistical kernels: quantiles, frequentist intervals, conjugate updates,
//! credible intervals and the stage-to-stage prior transforms.

mod conjugate;
mod fit;
mod intervals;
mod transform;

pub use conjugate::{
    beta_posterior_update, credible_interval, normal_posterior_update, BetaParams, NormalParams,
    Posterior, ShotSummary,
};
pub use fit::{beta_log_likelihood, beta_mle_fit, FIT_CLAMP, SHAPE_MAX, SHAPE_MIN};
pub use intervals::{beta_inv_cdf, frequentist_interval, normal_quantile, FrequentistKind};
pub use transform::{
    beta_prior_transform, normal_prior_transform, DEFAULT_PRIOR_SAMPLES, MIN_PRIOR_SAMPLES,
};

use crate::{Error, Result};

/// Validates a two-sided level `0 < alpha < 1`.
pub(crate) fn check_level(alpha: f64) -> Result<f64> {
    if alpha > 0.0 && alpha < 1.0 {
        Ok(alpha)
    } else {
        Err(Error::InvalidLevel(alpha))
    }
}
