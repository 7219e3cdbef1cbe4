use crate::angle::ProbInterval;
use crate::special;
use crate::{Error, Result};

use super::check_level;

/// Pooled measurements at one Grover depth.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct ShotSummary {
    n: u64,
    successes: u64,
}

impl ShotSummary {
    pub fn new(n: u64, successes: u64) -> Result<Self> {
        if successes > n {
            return Err(Error::Domain {
                what: "successes",
                value: successes as f64,
            });
        }
        Ok(Self { n, successes })
    }

    pub fn n(&self) -> u64 {
        self.n
    }

    pub fn successes(&self) -> u64 {
        self.successes
    }

    pub fn failures(&self) -> u64 {
        self.n - self.successes
    }

    /// Sample mean; 0 for an empty summary.
    pub fn mean(&self) -> f64 {
        if self.n == 0 {
            0.0
        } else {
            self.successes as f64 / self.n as f64
        }
    }

    /// Pools two batches.
    pub fn merge(self, other: Self) -> Self {
        Self {
            n: self.n + other.n,
            successes: self.successes + other.successes,
        }
    }
}

/// Normal belief over a probability. An infinite variance is the
/// noninformative prior.
#[derive(Debug, Clone, Copy, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct NormalParams {
    pub mean: f64,
    /// Serialized as `null` when infinite.
    #[cfg_attr(feature = "serde", serde(with = "infinite_as_none"))]
    pub variance: f64,
}

#[cfg(feature = "serde")]
mod infinite_as_none {
    use serde::{Deserialize, Deserializer, Serialize, Serializer};

    pub fn serialize<S: Serializer>(v: &f64, s: S) -> Result<S::Ok, S::Error> {
        v.is_finite().then_some(*v).serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<f64, D::Error> {
        Ok(Option::<f64>::deserialize(d)?.unwrap_or(f64::INFINITY))
    }
}

impl NormalParams {
    pub fn new(mean: f64, variance: f64) -> Result<Self> {
        if !mean.is_finite() {
            return Err(Error::Domain {
                what: "normal mean",
                value: mean,
            });
        }
        if variance.is_nan() || variance <= 0.0 {
            return Err(Error::Domain {
                what: "normal variance",
                value: variance,
            });
        }
        Ok(Self { mean, variance })
    }

    pub fn noninformative() -> Self {
        Self {
            mean: 0.5,
            variance: f64::INFINITY,
        }
    }

    pub fn is_noninformative(&self) -> bool {
        self.variance.is_infinite()
    }

    pub fn std_dev(&self) -> f64 {
        libm::sqrt(self.variance)
    }
}

/// Beta belief over a probability.
#[derive(Debug, Clone, Copy, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct BetaParams {
    alpha_shape: f64,
    beta_shape: f64,
}

impl BetaParams {
    /// Jeffreys prior `Beta(1/2, 1/2)`.
    pub const JEFFREYS: Self = Self {
        alpha_shape: 0.5,
        beta_shape: 0.5,
    };

    pub fn new(alpha_shape: f64, beta_shape: f64) -> Result<Self> {
        if !(alpha_shape > 0.0 && alpha_shape.is_finite()) {
            return Err(Error::Domain {
                what: "beta alpha shape",
                value: alpha_shape,
            });
        }
        if !(beta_shape > 0.0 && beta_shape.is_finite()) {
            return Err(Error::Domain {
                what: "beta beta shape",
                value: beta_shape,
            });
        }
        Ok(Self {
            alpha_shape,
            beta_shape,
        })
    }

    pub fn alpha_shape(&self) -> f64 {
        self.alpha_shape
    }

    pub fn beta_shape(&self) -> f64 {
        self.beta_shape
    }

    pub fn mean(&self) -> f64 {
        self.alpha_shape / (self.alpha_shape + self.beta_shape)
    }

    pub fn variance(&self) -> f64 {
        let s = self.alpha_shape + self.beta_shape;
        self.alpha_shape * self.beta_shape / (s * s * (s + 1.0))
    }

    pub fn cdf(&self, x: f64) -> f64 {
        special::reg_inc_beta(x, self.alpha_shape, self.beta_shape)
    }
}

/// Conjugate posterior of either family.
#[derive(Debug, Clone, Copy, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub enum Posterior {
    Normal(NormalParams),
    Beta(BetaParams),
}

/// Precision-weighted normal update with the plug-in variance
/// `σ̂² = X̄(1-X̄)`. For the variance only, the sample mean is clamped to
/// `[1/2n, 1-1/2n]` so all-zero or all-one batches keep a finite precision.
pub fn normal_posterior_update(prior: NormalParams, shots: ShotSummary) -> Result<NormalParams> {
    let n = shots.n();
    if n == 0 {
        return Err(Error::Domain {
            what: "shot count",
            value: 0.0,
        });
    }
    let n_f = n as f64;
    let mean = shots.mean();
    let guarded = mean.clamp(0.5 / n_f, 1.0 - 0.5 / n_f);
    let data_variance = guarded * (1.0 - guarded) / n_f;
    if prior.is_noninformative() {
        return Ok(NormalParams {
            mean,
            variance: data_variance,
        });
    }
    let prior_precision = 1.0 / prior.variance;
    let data_precision = 1.0 / data_variance;
    let precision = prior_precision + data_precision;
    Ok(NormalParams {
        mean: (prior.mean * prior_precision + mean * data_precision) / precision,
        variance: 1.0 / precision,
    })
}

/// `Beta(α + s, β + n - s)`.
pub fn beta_posterior_update(prior: BetaParams, shots: ShotSummary) -> BetaParams {
    BetaParams {
        alpha_shape: prior.alpha_shape + shots.successes() as f64,
        beta_shape: prior.beta_shape + shots.failures() as f64,
    }
}

/// Equal-tailed `1-α` credible interval. Normal intervals are truncated to `[0, 1]`.
pub fn credible_interval(posterior: Posterior, alpha: f64) -> Result<ProbInterval> {
    let alpha = check_level(alpha)?;
    match posterior {
        Posterior::Normal(params) => {
            if params.is_noninformative() {
                return Ok(ProbInterval::UNIT);
            }
            let half = special::normal_ppf(1.0 - 0.5 * alpha) * params.std_dev();
            Ok(ProbInterval::truncated(
                params.mean - half,
                params.mean + half,
            ))
        }
        Posterior::Beta(params) => {
            let lo = special::inv_reg_inc_beta(0.5 * alpha, params.alpha_shape, params.beta_shape);
            let hi =
                special::inv_reg_inc_beta(1.0 - 0.5 * alpha, params.alpha_shape, params.beta_shape);
            Ok(ProbInterval::truncated(lo, hi))
        }
    }
}
