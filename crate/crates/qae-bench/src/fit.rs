use qae_core::oracle::Weighting;
use serde::{Deserialize, Serialize};

use crate::{BenchError, CellSummary, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ScalingModel {
    /// `log10 N = intercept + slope · log10 error`.
    LogLog,
    /// `N = β √(a(1-a))` through the origin; `β` is reported as the slope.
    SqrtA,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ScalingFit {
    pub slope: f64,
    pub intercept: f64,
    /// Coefficient of determination in `[0, 1]`. Uncentered for the
    /// through-origin model.
    pub r_squared: f64,
}

/// Fit inputs from cell summaries: `(median error, mean complexity)` for
/// [`ScalingModel::LogLog`], `(a, mean complexity)` for [`ScalingModel::SqrtA`].
pub fn scaling_points(
    summaries: &[CellSummary],
    model: ScalingModel,
    weighting: Weighting,
) -> Vec<(f64, f64)> {
    summaries
        .iter()
        .map(|s| {
            let x = match model {
                ScalingModel::LogLog => s.median_abs_error,
                ScalingModel::SqrtA => s.a_true,
            };
            (x, s.mean_complexity(weighting))
        })
        .collect()
}

fn r_squared(residual: f64, total: f64) -> f64 {
    if total > 0.0 {
        (1.0 - residual / total).clamp(0.0, 1.0)
    } else if residual == 0.0 {
        1.0
    } else {
        0.0
    }
}

pub fn fit_scaling(points: &[(f64, f64)], model: ScalingModel) -> Result<ScalingFit> {
    if points.len() < 3 {
        return Err(BenchError::Invalid(format!(
            "a scaling fit needs at least 3 points, got {}",
            points.len()
        )));
    }
    if let Some(&(x, y)) = points
        .iter()
        .find(|(x, y)| !x.is_finite() || !y.is_finite())
    {
        return Err(BenchError::Invalid(format!("non-finite point ({x}, {y})")));
    }
    match model {
        ScalingModel::LogLog => {
            if let Some(&(x, y)) = points.iter().find(|(x, y)| *x <= 0.0 || *y <= 0.0) {
                return Err(BenchError::Invalid(format!(
                    "log-log fit needs positive values, got ({x}, {y})"
                )));
            }
            let logs: Vec<(f64, f64)> = points
                .iter()
                .map(|&(x, y)| (x.log10(), y.log10()))
                .collect();
            let n = logs.len() as f64;
            let mx = logs.iter().map(|p| p.0).sum::<f64>() / n;
            let my = logs.iter().map(|p| p.1).sum::<f64>() / n;
            let sxx: f64 = logs.iter().map(|p| (p.0 - mx).powi(2)).sum();
            let sxy: f64 = logs.iter().map(|p| (p.0 - mx) * (p.1 - my)).sum();
            if sxx <= f64::EPSILON * logs.iter().map(|p| p.0 * p.0).sum::<f64>() {
                return Err(BenchError::RankDeficient);
            }
            let slope = sxy / sxx;
            let intercept = my - slope * mx;
            let ss_res: f64 = logs
                .iter()
                .map(|p| (p.1 - intercept - slope * p.0).powi(2))
                .sum();
            let ss_tot: f64 = logs.iter().map(|p| (p.1 - my).powi(2)).sum();
            Ok(ScalingFit {
                slope,
                intercept,
                r_squared: r_squared(ss_res, ss_tot),
            })
        }
        ScalingModel::SqrtA => {
            if let Some(&(a, _)) = points.iter().find(|(a, _)| !(*a > 0.0 && *a < 1.0)) {
                return Err(BenchError::Invalid(format!("amplitude {a} outside (0, 1)")));
            }
            let us: Vec<(f64, f64)> = points
                .iter()
                .map(|&(a, y)| ((a * (1.0 - a)).sqrt(), y))
                .collect();
            let suu: f64 = us.iter().map(|p| p.0 * p.0).sum();
            let suy: f64 = us.iter().map(|p| p.0 * p.1).sum();
            let beta = suy / suu;
            let ss_res: f64 = us.iter().map(|p| (p.1 - beta * p.0).powi(2)).sum();
            let ss_tot: f64 = us.iter().map(|p| p.1 * p.1).sum();
            Ok(ScalingFit {
                slope: beta,
                intercept: 0.0,
                r_squared: r_squared(ss_res, ss_tot),
            })
        }
    }
}
