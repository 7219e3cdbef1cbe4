use qae_core::oracle::Weighting;
use serde::{Deserialize, Serialize};

use crate::{BenchError, ExperimentRecord, Method, Result};

/// Statistics of one `(method, a, ε)` cell.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CellSummary {
    pub method: Method,
    pub a_true: f64,
    pub epsilon: f64,
    pub runs: usize,
    /// Runs that stopped at the depth cap.
    pub failures: usize,
    /// Median of `|point - a_true|`.
    pub median_abs_error: f64,
    pub mean_complexity_k: f64,
    #[serde(rename = "mean_complexity_K")]
    pub mean_complexity_big_k: f64,
    /// 10th, 50th and 90th percentiles of the `K`-weighted complexity.
    pub complexity_percentiles: [f64; 3],
    pub coverage: f64,
    /// Mean half-width of the final amplitude interval.
    pub mean_radius: f64,
    /// Entry `t-1` is the mean of `r_{t-1}/r_t` over runs where both stages are non-final.
    pub radius_ratio_profile: Vec<f64>,
}

impl CellSummary {
    pub fn mean_complexity(&self, weighting: Weighting) -> f64 {
        match weighting {
            Weighting::GroverCalls => self.mean_complexity_k,
            Weighting::OracleCalls | Weighting::Shots => self.mean_complexity_big_k,
        }
    }
}

fn median(sorted: &[f64]) -> f64 {
    let n = sorted.len();
    if n % 2 == 1 {
        sorted[n / 2]
    } else {
        0.5 * (sorted[n / 2 - 1] + sorted[n / 2])
    }
}

/// Linear-interpolation percentile of sorted data, `q ∈ [0, 1]`.
fn percentile(sorted: &[f64], q: f64) -> f64 {
    let pos = q * (sorted.len() - 1) as f64;
    let i = pos.floor() as usize;
    let frac = pos - i as f64;
    match sorted.get(i + 1) {
        Some(next) => sorted[i] + frac * (next - sorted[i]),
        None => sorted[i],
    }
}

fn mean(values: impl Iterator<Item = f64>) -> f64 {
    let (sum, n) = values.fold((0.0, 0usize), |(s, n), v| (s + v, n + 1));
    sum / n as f64
}

/// Ratios `r_{t-1}/r_t` of consecutive stage radii, skipping the final stage.
fn stage_ratios(record: &ExperimentRecord) -> impl Iterator<Item = (usize, f64)> + '_ {
    let non_final = record.stage_radii.len().saturating_sub(1);
    record.stage_radii[..non_final]
        .windows(2)
        .enumerate()
        .map(|(i, w)| (i, w[0] / w[1]))
}

/// Mean of `r_{t-1}/r_t` over all non-final stage pairs of all records.
pub fn mean_radius_ratio(records: &[ExperimentRecord]) -> Option<f64> {
    let ratios: Vec<f64> = records
        .iter()
        .flat_map(|r| stage_ratios(r).map(|(_, v)| v))
        .collect();
    (!ratios.is_empty()).then(|| mean(ratios.into_iter()))
}

fn summarize_cell(records: &[&ExperimentRecord]) -> CellSummary {
    let first = records[0];
    let mut errors: Vec<f64> = records.iter().map(|r| r.abs_error()).collect();
    errors.sort_by(f64::total_cmp);
    let mut big_k: Vec<f64> = records.iter().map(|r| r.n_oracle_big_k as f64).collect();
    big_k.sort_by(f64::total_cmp);

    let mut sums: Vec<(f64, usize)> = Vec::new();
    for record in records {
        for (i, ratio) in stage_ratios(record) {
            if sums.len() <= i {
                sums.resize(i + 1, (0.0, 0));
            }
            sums[i].0 += ratio;
            sums[i].1 += 1;
        }
    }

    CellSummary {
        method: first.method,
        a_true: first.a_true,
        epsilon: first.epsilon,
        runs: records.len(),
        failures: records.iter().filter(|r| r.failure.is_some()).count(),
        median_abs_error: median(&errors),
        mean_complexity_k: mean(records.iter().map(|r| r.n_oracle_k as f64)),
        mean_complexity_big_k: mean(big_k.iter().copied()),
        complexity_percentiles: [
            percentile(&big_k, 0.1),
            percentile(&big_k, 0.5),
            percentile(&big_k, 0.9),
        ],
        coverage: records.iter().filter(|r| r.covered).count() as f64 / records.len() as f64,
        mean_radius: mean(records.iter().map(|r| r.radius())),
        radius_ratio_profile: sums.into_iter().map(|(s, n)| s / n as f64).collect(),
    }
}

/// One summary per `(method, a, ε)` cell, in order of first appearance.
pub fn summarize(records: &[ExperimentRecord]) -> Result<Vec<CellSummary>> {
    if records.is_empty() {
        return Err(BenchError::Empty("records"));
    }
    type CellKey = (Method, u64, u64);
    let mut cells: Vec<(CellKey, Vec<&ExperimentRecord>)> = Vec::new();
    for record in records {
        let key = (
            record.method,
            record.a_true.to_bits(),
            record.epsilon.to_bits(),
        );
        match cells.iter_mut().find(|(k, _)| *k == key) {
            Some((_, group)) => group.push(record),
            None => cells.push((key, vec![record])),
        }
    }
    Ok(cells
        .iter()
        .map(|(_, group)| summarize_cell(group))
        .collect())
}
