use crate::oracle::Weighting;
use crate::statkit::{FrequentistKind, DEFAULT_PRIOR_SAMPLES, MIN_PRIOR_SAMPLES};
use crate::{Error, Result};

/// Smallest accepted target accuracy.
pub const EPSILON_FLOOR: f64 = 1e-8;
/// Default Grover depth cap.
pub const DEFAULT_K_CAP: u64 = 10_000_000;
pub const DEFAULT_N_INCRE: u64 = 10;
pub const DEFAULT_MAX_ITERATIONS: u64 = 10_000_000;

/// How the oracle factor grows between stages.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub enum Schedule {
    /// Largest feasible odd `K' ≥ 2K` found by linear search.
    #[default]
    Standard,
    /// `K ← 3K` once the scaled interval sits in one base-3 reference slot.
    Hybrid3,
    /// `K ← 5K` or `K ← 3K` on base-5 or base-3 slot containment, base 5 first.
    Hybrid35,
}

/// Interval engine run after every batch of shots.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub enum IntervalKind {
    ChernoffHoeffding,
    ClopperPearson,
    /// Normal-approximation interval, the natural partner of the hybrid schedules.
    Wald,
    NormalBayes,
    BetaBayes,
}

impl IntervalKind {
    pub fn is_bayesian(self) -> bool {
        matches!(self, IntervalKind::NormalBayes | IntervalKind::BetaBayes)
    }

    pub fn frequentist(self) -> Option<FrequentistKind> {
        match self {
            IntervalKind::ChernoffHoeffding => Some(FrequentistKind::ChernoffHoeffding),
            IntervalKind::ClopperPearson => Some(FrequentistKind::ClopperPearson),
            IntervalKind::Wald => Some(FrequentistKind::Wald),
            IntervalKind::NormalBayes | IntervalKind::BetaBayes => None,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct EstimatorConfig {
    /// Target half-width of the amplitude interval.
    pub epsilon: f64,
    /// Overall level; coverage is at least `1 - alpha`.
    pub alpha: f64,
    /// Shots per iteration.
    pub n_incre: u64,
    pub schedule: Schedule,
    pub interval: IntervalKind,
    /// Largest Grover depth `k` the schedule may reach.
    pub k_cap: u64,
    /// Convention used by [`super::EstimationResult::complexity`].
    pub weighting: Weighting,
    /// Monte Carlo sample count of the beta prior transform.
    pub prior_samples: usize,
    /// When false, every stage starts from the noninformative prior.
    pub carry_prior: bool,
    /// Safety stop on the number of shot batches.
    pub max_iterations: u64,
}

impl EstimatorConfig {
    pub fn new(epsilon: f64, alpha: f64, interval: IntervalKind) -> Self {
        Self {
            epsilon,
            alpha,
            n_incre: DEFAULT_N_INCRE,
            schedule: Schedule::Standard,
            interval,
            k_cap: DEFAULT_K_CAP,
            weighting: Weighting::OracleCalls,
            prior_samples: DEFAULT_PRIOR_SAMPLES,
            carry_prior: true,
            max_iterations: DEFAULT_MAX_ITERATIONS,
        }
    }

    pub fn with_schedule(mut self, schedule: Schedule) -> Self {
        self.schedule = schedule;
        self
    }

    pub fn with_n_incre(mut self, n_incre: u64) -> Self {
        self.n_incre = n_incre;
        self
    }

    pub fn with_k_cap(mut self, k_cap: u64) -> Self {
        self.k_cap = k_cap;
        self
    }

    pub fn with_weighting(mut self, weighting: Weighting) -> Self {
        self.weighting = weighting;
        self
    }

    pub fn with_prior_samples(mut self, prior_samples: usize) -> Self {
        self.prior_samples = prior_samples;
        self
    }

    pub fn with_carry_prior(mut self, carry_prior: bool) -> Self {
        self.carry_prior = carry_prior;
        self
    }

    pub fn with_max_iterations(mut self, max_iterations: u64) -> Self {
        self.max_iterations = max_iterations;
        self
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.epsilon >= EPSILON_FLOOR && self.epsilon < 0.5) {
            return Err(Error::InvalidConfig("epsilon must lie in [1e-8, 0.5)"));
        }
        if !(self.alpha > 0.0 && self.alpha < 1.0) {
            return Err(Error::InvalidLevel(self.alpha));
        }
        if self.n_incre == 0 {
            return Err(Error::InvalidConfig("n_incre must be at least 1"));
        }
        if self.interval == IntervalKind::BetaBayes && self.prior_samples < MIN_PRIOR_SAMPLES {
            return Err(Error::InvalidConfig("prior sample count below 100"));
        }
        if self.max_iterations == 0 {
            return Err(Error::InvalidConfig("max_iterations must be at least 1"));
        }
        Ok(())
    }
}
