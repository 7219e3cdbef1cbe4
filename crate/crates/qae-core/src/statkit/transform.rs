//! Stage-to-stage prior transforms.
//!
//! A posterior over `p_t = sin²(K_t θ)` becomes a prior over
//! `p_next = sin²(K_next θ)` by pushing it through
//! `φ(p) = sin²(K_next · f_t(p))`, where `f_t` is the branch inverse for the
//! tracked quadrant.

use alloc::vec::Vec;

use rand::Rng;
use rand_distr::{Beta, Distribution};

use crate::angle::{branch_angle, GroverDepth, QuadrantIndex};
use crate::{Error, Result};

use super::{beta_mle_fit, BetaParams, NormalParams, FIT_CLAMP};

/// Default Monte Carlo sample count for the beta transform.
pub const DEFAULT_PRIOR_SAMPLES: usize = 1000;
/// Smallest accepted sample count for the beta transform.
pub const MIN_PRIOR_SAMPLES: usize = 100;

fn push_forward(p: f64, from: GroverDepth, to: GroverDepth, l: QuadrantIndex) -> Result<f64> {
    let theta = branch_angle(p, from, l)?;
    let s = libm::sin(to.oracle_factor() as f64 * theta);
    Ok(s * s)
}

/// Delta-method transform of a normal posterior.
///
/// Mean `μ' = φ(μ)` and variance `(K_next/K_t)² · μ'(1-μ') / (μ(1-μ)) · σ²`.
/// Fails with [`Error::SingularTransform`] when `μ ∉ (0, 1)` or the new
/// variance collapses to zero.
pub fn normal_prior_transform(
    posterior: NormalParams,
    from: GroverDepth,
    to: GroverDepth,
    l: QuadrantIndex,
) -> Result<NormalParams> {
    let mu = posterior.mean;
    if !(mu > 0.0 && mu < 1.0) || posterior.is_noninformative() {
        return Err(Error::SingularTransform(mu));
    }
    let mean = push_forward(mu, from, to, l)?;
    let ratio = to.oracle_factor() as f64 / from.oracle_factor() as f64;
    let variance = ratio * ratio * mean * (1.0 - mean) / (mu * (1.0 - mu)) * posterior.variance;
    if !(variance > 0.0 && variance.is_finite()) {
        return Err(Error::SingularTransform(mu));
    }
    NormalParams::new(mean, variance)
}

/// Sampling transform of a beta posterior: draws `samples` values, maps them
/// through `φ`, and refits a beta distribution by maximum likelihood.
pub fn beta_prior_transform<R: Rng + ?Sized>(
    posterior: BetaParams,
    from: GroverDepth,
    to: GroverDepth,
    l: QuadrantIndex,
    samples: usize,
    rng: &mut R,
) -> Result<BetaParams> {
    if samples < MIN_PRIOR_SAMPLES {
        return Err(Error::InvalidConfig("prior sample count below 100"));
    }
    let dist =
        Beta::new(posterior.alpha_shape(), posterior.beta_shape()).map_err(|_| Error::Domain {
            what: "beta alpha shape",
            value: posterior.alpha_shape(),
        })?;
    let mut mapped = Vec::with_capacity(samples);
    for _ in 0..samples {
        let y: f64 = dist.sample(rng);
        let q = push_forward(y.clamp(0.0, 1.0), from, to, l)?;
        mapped.push(q.clamp(FIT_CLAMP, 1.0 - FIT_CLAMP));
    }
    beta_mle_fit(&mapped)
}
