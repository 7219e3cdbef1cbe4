use crate::angle::ProbInterval;
use crate::special;
use crate::{Error, Result};

use super::{check_level, BetaParams, ShotSummary};

/// `z` with `Φ(z) = p`, for `0 < p < 1`.
pub fn normal_quantile(p: f64) -> Result<f64> {
    if !(p > 0.0 && p < 1.0) {
        return Err(Error::Domain {
            what: "normal quantile probability",
            value: p,
        });
    }
    Ok(special::normal_ppf(p))
}

/// `x` with `I_x(α, β) = q`. Endpoints map to 0 and 1.
pub fn beta_inv_cdf(q: f64, params: BetaParams) -> f64 {
    special::inv_reg_inc_beta(q, params.alpha_shape(), params.beta_shape())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub enum FrequentistKind {
    /// `mean ± sqrt(ln(2/α) / 2n)`, truncated to `[0, 1]`.
    ChernoffHoeffding,
    /// Exact binomial interval from beta quantiles.
    ClopperPearson,
    /// Normal approximation `mean ± z·sqrt(m(1-m)/n)`, truncated, where `m` is
    /// the mean clamped to `[1/2n, 1-1/2n]`.
    Wald,
}

/// Two-sided `1-α` confidence interval for a binomial proportion.
pub fn frequentist_interval(
    kind: FrequentistKind,
    shots: ShotSummary,
    alpha: f64,
) -> Result<ProbInterval> {
    let alpha = check_level(alpha)?;
    let n = shots.n();
    if n == 0 {
        return Err(Error::Domain {
            what: "shot count",
            value: 0.0,
        });
    }
    let s = shots.successes();
    match kind {
        FrequentistKind::ChernoffHoeffding => {
            let mean = shots.mean();
            let radius = libm::sqrt(libm::log(2.0 / alpha) / (2.0 * n as f64));
            Ok(ProbInterval::truncated(mean - radius, mean + radius))
        }
        FrequentistKind::ClopperPearson => {
            let (s_f, n_f) = (s as f64, n as f64);
            let lo = if s == 0 {
                0.0
            } else {
                special::inv_reg_inc_beta(0.5 * alpha, s_f, n_f - s_f + 1.0)
            };
            let hi = if s == n {
                1.0
            } else {
                special::inv_reg_inc_beta(1.0 - 0.5 * alpha, s_f + 1.0, n_f - s_f)
            };
            Ok(ProbInterval::truncated(lo, hi))
        }
        FrequentistKind::Wald => {
            let mean = shots.mean();
            let n_f = n as f64;
            let guarded = mean.clamp(0.5 / n_f, 1.0 - 0.5 / n_f);
            let radius = special::normal_ppf(1.0 - 0.5 * alpha)
                * libm::sqrt(guarded * (1.0 - guarded) / n_f);
            Ok(ProbInterval::truncated(mean - radius, mean + radius))
        }
    }
}
