//! Estimator state machines.
//!
//! A run is a sequence of stages. Within a stage the oracle factor `K_t` is
//! fixed and shots arrive in batches of `n_incre`; after every batch the
//! pooled stage data give a probability interval, which is mapped back to an
//! angle interval through the tracked quadrant. The run stops as soon as the
//! amplitude interval is narrow enough and otherwise asks the schedule
//! whether a larger `K` is safe.

mod classical;
mod config;
mod iterative;
mod schedule;

use alloc::vec::Vec;

use crate::angle::{GroverDepth, ProbInterval, QuadrantIndex, ThetaInterval};
use crate::oracle::{ShotLedger, Weighting};
use crate::statkit::{Posterior, ShotSummary};

pub use classical::{aae_estimate, classical_budget, classical_qae, classical_shots_for_mse};
pub use config::{
    EstimatorConfig, IntervalKind, Schedule, DEFAULT_K_CAP, DEFAULT_MAX_ITERATIONS,
    DEFAULT_N_INCRE, EPSILON_FLOOR,
};
pub use iterative::{biqae_run, iqae_run};
pub use schedule::{alpha_allocation, find_next_k, next_depth, stage_count_bound};

/// Summary of one stage, taken when the stage ends.
#[derive(Debug, Clone, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct StageRecord {
    pub t: usize,
    pub depth: GroverDepth,
    pub quadrant: QuadrantIndex,
    /// Pooled shots of the stage.
    pub shots: ShotSummary,
    /// Number of shot batches in the stage.
    pub iterations: u64,
    pub theta_interval: ThetaInterval,
    /// Posterior after the last batch, for the Bayesian engines.
    pub posterior: Option<Posterior>,
    /// Prior the stage started from.
    pub prior: Option<Posterior>,
    /// Set when the carried-over prior was singular and replaced by the noninformative one.
    pub prior_fallback: bool,
}

impl StageRecord {
    /// Radius of the stage-end angle interval.
    pub fn radius(&self) -> f64 {
        self.theta_interval.radius()
    }

    /// `K_t · N_t`.
    pub fn oracle_calls(&self) -> u64 {
        self.depth.oracle_factor() * self.shots.n()
    }
}

#[derive(Debug, Clone, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct EstimationResult {
    pub a_interval: ProbInterval,
    /// Center of `a_interval`.
    pub a_point: f64,
    pub ledger: ShotLedger,
    pub stages: Vec<StageRecord>,
    /// Convention of [`EstimationResult::complexity`].
    pub weighting: Weighting,
}

impl EstimationResult {
    /// Number of stages `T`.
    pub fn stage_count(&self) -> usize {
        self.stages.len()
    }

    pub fn complexity(&self) -> u64 {
        self.ledger.total(self.weighting)
    }

    pub fn max_depth(&self) -> GroverDepth {
        self.ledger.max_depth()
    }

    /// Number of stages whose prior had to be reset.
    pub fn prior_fallbacks(&self) -> usize {
        self.stages.iter().filter(|s| s.prior_fallback).count()
    }
}
