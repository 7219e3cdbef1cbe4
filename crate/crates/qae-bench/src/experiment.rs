use std::time::Instant;

use qae_core::angle::{amplitude_to_angle, Amplitude};
use qae_core::estimators::{
    EstimationResult, IntervalKind, StageRecord, DEFAULT_K_CAP, DEFAULT_N_INCRE,
};
use qae_core::oracle::{repetition_seed, Weighting};
use qae_core::statkit::DEFAULT_PRIOR_SAMPLES;
use qae_core::Error;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::{BenchError, Method, Result};

/// Estimator knobs shared by every run of a plan.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RunSettings {
    pub n_incre: u64,
    pub weighting: Weighting,
    pub prior_samples: usize,
    pub carry_prior: bool,
    pub k_cap: u64,
    /// Replaces the method's default interval engine.
    pub interval: Option<IntervalKind>,
    /// Keep the full stage trace in each record.
    pub trace: bool,
}

impl Default for RunSettings {
    fn default() -> Self {
        Self {
            n_incre: DEFAULT_N_INCRE,
            weighting: Weighting::OracleCalls,
            prior_samples: DEFAULT_PRIOR_SAMPLES,
            carry_prior: true,
            k_cap: DEFAULT_K_CAP,
            interval: None,
            trace: false,
        }
    }
}

/// Grid of `(a, ε)` cells, each repeated `repetitions` times.
#[derive(Debug, Clone, PartialEq)]
pub struct Plan {
    pub method: Method,
    pub amplitudes: Vec<f64>,
    pub epsilons: Vec<f64>,
    pub alpha: f64,
    pub repetitions: u64,
    pub master_seed: u64,
    pub settings: RunSettings,
}

impl Plan {
    pub fn new(
        method: Method,
        amplitudes: Vec<f64>,
        epsilons: Vec<f64>,
        repetitions: u64,
        master_seed: u64,
    ) -> Self {
        Self {
            method,
            amplitudes,
            epsilons,
            alpha: 0.05,
            repetitions,
            master_seed,
            settings: RunSettings::default(),
        }
    }

    pub fn with_alpha(mut self, alpha: f64) -> Self {
        self.alpha = alpha;
        self
    }

    pub fn with_settings(mut self, settings: RunSettings) -> Self {
        self.settings = settings;
        self
    }

    fn validate(&self) -> Result<()> {
        if self.amplitudes.is_empty() || self.epsilons.is_empty() {
            return Err(BenchError::Empty("plan grid"));
        }
        if self.repetitions == 0 {
            return Err(BenchError::Invalid("repetitions must be at least 1".into()));
        }
        for &a in &self.amplitudes {
            Amplitude::new(a)?;
        }
        for &eps in &self.epsilons {
            if let Some(cfg) = self.method.config(eps, self.alpha, &self.settings) {
                cfg.validate()?;
            } else if !(eps > 0.0 && eps < 0.5) {
                return Err(BenchError::Invalid(format!(
                    "epsilon {eps} outside (0, 0.5)"
                )));
            }
        }
        if !(self.alpha > 0.0 && self.alpha < 1.0) {
            return Err(Error::InvalidLevel(self.alpha).into());
        }
        Ok(())
    }
}

/// Outcome of one repetition.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ExperimentRecord {
    pub method: Method,
    pub a_true: f64,
    pub epsilon: f64,
    pub alpha: f64,
    pub rep: u64,
    pub seed: u64,
    /// `Σ max(k, 1)·n`.
    pub n_oracle_k: u64,
    /// `Σ (2k+1)·n`.
    #[serde(rename = "n_oracle_K")]
    pub n_oracle_big_k: u64,
    pub n_shots: u64,
    pub lo: f64,
    pub hi: f64,
    pub point: f64,
    pub covered: bool,
    pub stages: usize,
    pub max_k: u64,
    pub wall_ns: u64,
    /// Stage-end angle radii in stage order.
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub stage_radii: Vec<f64>,
    /// Set when the run stopped at the depth cap or iteration guard.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub failure: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub trace: Option<Vec<StageRecord>>,
}

impl ExperimentRecord {
    #[allow(clippy::too_many_arguments)]
    pub fn from_result(
        method: Method,
        a_true: f64,
        epsilon: f64,
        alpha: f64,
        rep: u64,
        seed: u64,
        result: &EstimationResult,
        wall_ns: u64,
    ) -> Self {
        let (lo, hi) = (result.a_interval.lo, result.a_interval.hi);
        Self {
            method,
            a_true,
            epsilon,
            alpha,
            rep,
            seed,
            n_oracle_k: result.ledger.total(Weighting::GroverCalls),
            n_oracle_big_k: result.ledger.total(Weighting::OracleCalls),
            n_shots: result.ledger.total(Weighting::Shots),
            lo,
            hi,
            point: result.a_point,
            covered: lo <= a_true && a_true <= hi,
            stages: result.stage_count(),
            max_k: result.max_depth().k(),
            wall_ns,
            stage_radii: result.stages.iter().map(StageRecord::radius).collect(),
            failure: None,
            trace: None,
        }
    }

    pub fn abs_error(&self) -> f64 {
        (self.point - self.a_true).abs()
    }

    pub fn radius(&self) -> f64 {
        0.5 * (self.hi - self.lo)
    }

    pub fn complexity(&self, weighting: Weighting) -> u64 {
        match weighting {
            Weighting::GroverCalls => self.n_oracle_k,
            Weighting::OracleCalls => self.n_oracle_big_k,
            Weighting::Shots => self.n_shots,
        }
    }

    /// Copy with the wall time cleared, for comparing outcomes across runs.
    pub fn without_timing(&self) -> Self {
        Self {
            wall_ns: 0,
            ..self.clone()
        }
    }
}

/// Runs one repetition. A run that hits the depth cap becomes a record with
/// its partial interval and a `failure` note; other errors propagate.
pub fn run_single(
    method: Method,
    a: f64,
    epsilon: f64,
    alpha: f64,
    rep: u64,
    seed: u64,
    settings: &RunSettings,
) -> Result<ExperimentRecord> {
    let theta = amplitude_to_angle(Amplitude::new(a)?);
    let start = Instant::now();
    let outcome = method.estimate(theta, seed, epsilon, alpha, settings);
    let wall_ns = u64::try_from(start.elapsed().as_nanos()).unwrap_or(u64::MAX);
    let (result, failure) = match outcome {
        Ok(res) => (res, None),
        Err(Error::BudgetExceeded(partial)) => {
            let note = format!("budget exceeded at k = {}", partial.max_depth().k());
            (*partial, Some(note))
        }
        Err(e) => return Err(e.into()),
    };
    let mut record =
        ExperimentRecord::from_result(method, a, epsilon, alpha, rep, seed, &result, wall_ns);
    record.failure = failure;
    if settings.trace {
        record.trace = Some(result.stages);
    }
    Ok(record)
}

/// Executes every `(a, ε, rep)` cell of the plan in parallel. Records come back
/// in `(a, ε, rep)` order and repetition `r` uses the same seed in every cell
/// and for every method, so methods can be compared run by run.
pub fn run_experiment(plan: &Plan) -> Result<Vec<ExperimentRecord>> {
    plan.validate()?;
    let jobs: Vec<(f64, f64, u64)> = plan
        .amplitudes
        .iter()
        .flat_map(|&a| {
            plan.epsilons
                .iter()
                .flat_map(move |&eps| (0..plan.repetitions).map(move |rep| (a, eps, rep)))
        })
        .collect();
    jobs.into_par_iter()
        .map(|(a, eps, rep)| {
            let seed = repetition_seed(plan.master_seed, rep);
            run_single(plan.method, a, eps, plan.alpha, rep, seed, &plan.settings)
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn one_cell_one_record() {
        let plan = Plan::new(Method::IqaeCp, vec![0.5], vec![1e-2], 1, 3);
        let records = run_experiment(&plan).unwrap();
        assert_eq!(records.len(), 1);
        assert_eq!(records[0].seed, repetition_seed(3, 0));
    }

    #[test]
    fn records_follow_grid_order() {
        let plan = Plan::new(Method::BiqaeBeta, vec![0.2, 0.7], vec![1e-2, 1e-3], 3, 1);
        let records = run_experiment(&plan).unwrap();
        let keys: Vec<_> = records
            .iter()
            .map(|r| (r.a_true, r.epsilon, r.rep))
            .collect();
        let mut expected = Vec::new();
        for a in [0.2, 0.7] {
            for eps in [1e-2, 1e-3] {
                for rep in 0..3 {
                    expected.push((a, eps, rep));
                }
            }
        }
        assert_eq!(keys, expected);
    }

    #[test]
    fn covered_matches_interval() {
        let plan = Plan::new(Method::IqaeCh, vec![0.1, 0.9], vec![1e-2], 20, 8);
        for r in run_experiment(&plan).unwrap() {
            assert_eq!(r.covered, r.lo <= r.a_true && r.a_true <= r.hi);
            assert!(r.n_oracle_big_k >= r.n_oracle_k && r.n_oracle_big_k >= r.n_shots);
        }
    }

    #[test]
    fn depth_cap_becomes_failed_record() {
        let settings = RunSettings {
            k_cap: 3,
            ..RunSettings::default()
        };
        let plan = Plan::new(Method::IqaeCp, vec![0.4], vec![1e-5], 2, 4).with_settings(settings);
        let records = run_experiment(&plan).unwrap();
        assert!(records.iter().all(|r| r.failure.is_some() && r.max_k <= 3));
    }

    #[test]
    fn rejects_bad_plans() {
        assert!(run_experiment(&Plan::new(Method::IqaeCp, vec![], vec![1e-2], 1, 0)).is_err());
        assert!(run_experiment(&Plan::new(Method::IqaeCp, vec![0.5], vec![1e-2], 0, 0)).is_err());
        assert!(run_experiment(&Plan::new(Method::IqaeCp, vec![1.5], vec![1e-2], 1, 0)).is_err());
        assert!(run_experiment(&Plan::new(Method::Classical, vec![0.5], vec![0.7], 1, 0)).is_err());
    }

    #[test]
    fn trace_is_opt_in() {
        let plan = Plan::new(Method::BiqaeNormal, vec![0.5], vec![1e-3], 1, 2);
        assert!(run_experiment(&plan).unwrap()[0].trace.is_none());
        let traced = plan.with_settings(RunSettings {
            trace: true,
            ..RunSettings::default()
        });
        let r = &run_experiment(&traced).unwrap()[0];
        assert_eq!(r.trace.as_ref().unwrap().len(), r.stages);
    }
}
