//! Maximum-likelihood beta fit.
//!
//! The average log-likelihood `(α-1)·mean(ln x) + (β-1)·mean(ln(1-x)) - ln B(α, β)`
//! is concave in `(α, β)`, so a projected Newton iteration on the digamma
//! score equations started from the method-of-moments estimate converges
//! reliably, even for the very sharp samples produced late in a run.

use crate::special::{digamma, ln_beta, trigamma};
use crate::{Error, Result};

use super::BetaParams;

/// Samples are clamped into `[FIT_CLAMP, 1 - FIT_CLAMP]` before fitting.
pub const FIT_CLAMP: f64 = 1e-9;
/// Shape box searched by the fit.
pub const SHAPE_MIN: f64 = 1e-3;
pub const SHAPE_MAX: f64 = 1e6;

const TOLERANCE: f64 = 1e-8;
const MAX_NEWTON_STEPS: usize = 200;

#[derive(Debug, Clone, Copy)]
struct LogMeans {
    ln_x: f64,
    ln_1mx: f64,
}

/// Average beta log-likelihood of `samples` (clamped) under `params`.
pub fn beta_log_likelihood(samples: &[f64], params: BetaParams) -> f64 {
    let means = log_means(samples);
    avg_log_likelihood(means, params.alpha_shape(), params.beta_shape())
}

fn log_means(samples: &[f64]) -> LogMeans {
    let (mut ln_x, mut ln_1mx) = (0.0, 0.0);
    for &x in samples {
        let x = x.clamp(FIT_CLAMP, 1.0 - FIT_CLAMP);
        ln_x += libm::log(x);
        ln_1mx += libm::log1p(-x);
    }
    let n = samples.len() as f64;
    LogMeans {
        ln_x: ln_x / n,
        ln_1mx: ln_1mx / n,
    }
}

fn avg_log_likelihood(m: LogMeans, a: f64, b: f64) -> f64 {
    (a - 1.0) * m.ln_x + (b - 1.0) * m.ln_1mx - ln_beta(a, b)
}

fn moment_start(samples: &[f64]) -> (f64, f64) {
    let n = samples.len() as f64;
    let mean = samples
        .iter()
        .map(|x| x.clamp(FIT_CLAMP, 1.0 - FIT_CLAMP))
        .sum::<f64>()
        / n;
    let var = samples
        .iter()
        .map(|x| {
            let d = x.clamp(FIT_CLAMP, 1.0 - FIT_CLAMP) - mean;
            d * d
        })
        .sum::<f64>()
        / (n - 1.0);
    let common = mean * (1.0 - mean) / var - 1.0;
    if common.is_finite() && common > 0.0 {
        (mean * common, (1.0 - mean) * common)
    } else {
        (1.0, 1.0)
    }
}

/// Fits `Beta(α, β)` to samples in `[0, 1]` by maximum likelihood over
/// `[SHAPE_MIN, SHAPE_MAX]²`.
pub fn beta_mle_fit(samples: &[f64]) -> Result<BetaParams> {
    if samples.len() < 2 {
        return Err(Error::DegenerateSample);
    }
    if samples.iter().any(|x| !(0.0..=1.0).contains(x)) {
        let bad = samples
            .iter()
            .copied()
            .find(|x| !(0.0..=1.0).contains(x))
            .unwrap_or(f64::NAN);
        return Err(Error::Domain {
            what: "beta sample",
            value: bad,
        });
    }
    let first = samples[0].clamp(FIT_CLAMP, 1.0 - FIT_CLAMP);
    if samples
        .iter()
        .all(|x| x.clamp(FIT_CLAMP, 1.0 - FIT_CLAMP) == first)
    {
        return Err(Error::DegenerateSample);
    }

    let means = log_means(samples);
    let (a0, b0) = moment_start(samples);
    let mut a = a0.clamp(SHAPE_MIN, SHAPE_MAX);
    let mut b = b0.clamp(SHAPE_MIN, SHAPE_MAX);
    let mut ll = avg_log_likelihood(means, a, b);

    for _ in 0..MAX_NEWTON_STEPS {
        let psi_ab = digamma(a + b);
        let g_a = psi_ab - digamma(a) + means.ln_x;
        let g_b = psi_ab - digamma(b) + means.ln_1mx;
        let t_ab = trigamma(a + b);
        let h_aa = t_ab - trigamma(a);
        let h_bb = t_ab - trigamma(b);
        let h_ab = t_ab;
        let det = h_aa * h_bb - h_ab * h_ab;
        if !(det.is_finite() && det > 0.0) {
            break;
        }
        // Newton direction -H⁻¹g
        let step_a = -(h_bb * g_a - h_ab * g_b) / det;
        let step_b = -(h_aa * g_b - h_ab * g_a) / det;

        let mut scale = 1.0;
        let mut accepted = None;
        for _ in 0..60 {
            let na = (a + scale * step_a).clamp(SHAPE_MIN, SHAPE_MAX);
            let nb = (b + scale * step_b).clamp(SHAPE_MIN, SHAPE_MAX);
            let nll = avg_log_likelihood(means, na, nb);
            // rounding in ln B dominates near the optimum for large shapes
            if nll >= ll - 1e-13 * (1.0 + ll.abs()) {
                accepted = Some((na, nb, nll));
                break;
            }
            scale *= 0.5;
        }
        let Some((na, nb, nll)) = accepted else { break };
        let moved = ((na - a) / a).abs().max(((nb - b) / b).abs());
        a = na;
        b = nb;
        ll = nll;
        if moved < TOLERANCE {
            break;
        }
    }
    BetaParams::new(a, b)
}
