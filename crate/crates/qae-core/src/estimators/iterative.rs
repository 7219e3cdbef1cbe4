use alloc::boxed::Box;
use alloc::vec::Vec;

use crate::angle::{
    containment_check, invert_amplified, GroverDepth, ProbInterval, QuadrantIndex, ThetaInterval,
};
use crate::oracle::AmplitudeOracle;
use crate::statkit::{
    beta_posterior_update, beta_prior_transform, credible_interval, frequentist_interval,
    normal_posterior_update, normal_prior_transform, BetaParams, NormalParams, Posterior,
    ShotSummary,
};
use crate::{Error, Result};

use super::StageRecord;
use super::{
    alpha_allocation, find_next_k, next_depth, EstimationResult, EstimatorConfig, IntervalKind,
    Schedule,
};

/// Iterative QAE with a frequentist interval (Chernoff-Hoeffding,
/// Clopper-Pearson or Wald) under any schedule.
pub fn iqae_run(
    oracle: &mut AmplitudeOracle,
    config: &EstimatorConfig,
) -> Result<EstimationResult> {
    if config.interval.is_bayesian() {
        return Err(Error::InvalidConfig(
            "iqae needs a frequentist interval kind",
        ));
    }
    Run::new(config)?.execute(oracle)
}

/// Bayesian iterative QAE: conjugate updates within a stage, credible
/// intervals, and the posterior carried into the next stage as its prior.
pub fn biqae_run(
    oracle: &mut AmplitudeOracle,
    config: &EstimatorConfig,
) -> Result<EstimationResult> {
    if !config.interval.is_bayesian() {
        return Err(Error::InvalidConfig("biqae needs a Bayesian interval kind"));
    }
    Run::new(config)?.execute(oracle)
}

fn initial_prior(kind: IntervalKind) -> Option<Posterior> {
    match kind {
        IntervalKind::NormalBayes => Some(Posterior::Normal(NormalParams::noninformative())),
        IntervalKind::BetaBayes => Some(Posterior::Beta(BetaParams::JEFFREYS)),
        IntervalKind::ChernoffHoeffding | IntervalKind::ClopperPearson | IntervalKind::Wald => None,
    }
}

struct Run<'a> {
    config: &'a EstimatorConfig,
    alpha_t: f64,
    t: usize,
    depth: GroverDepth,
    quadrant: QuadrantIndex,
    shots: ShotSummary,
    iterations: u64,
    prior: Option<Posterior>,
    prior_fallback: bool,
    stages: Vec<StageRecord>,
}

impl<'a> Run<'a> {
    fn new(config: &'a EstimatorConfig) -> Result<Self> {
        config.validate()?;
        Ok(Self {
            config,
            alpha_t: alpha_allocation(config.epsilon, config.alpha),
            t: 0,
            depth: GroverDepth::ZERO,
            quadrant: QuadrantIndex::ZERO,
            shots: ShotSummary::default(),
            iterations: 0,
            prior: initial_prior(config.interval),
            prior_fallback: false,
            stages: Vec::new(),
        })
    }

    fn execute(mut self, oracle: &mut AmplitudeOracle) -> Result<EstimationResult> {
        let cfg = self.config;
        oracle.begin_stage(0);
        let mut theta = ThetaInterval::FULL;
        let mut posterior = None;
        for _ in 0..cfg.max_iterations {
            let successes = oracle.sample_shots(self.depth, cfg.n_incre);
            self.shots = self.shots.merge(ShotSummary::new(cfg.n_incre, successes)?);
            self.iterations += 1;

            let (p_interval, post) = self.stage_interval()?;
            posterior = post;
            theta = invert_amplified(p_interval, self.depth, self.quadrant)?;
            if theta.to_amplitudes().radius() <= cfg.epsilon {
                self.close_stage(theta, posterior);
                return Ok(self.finish(oracle, theta));
            }

            let next = match next_depth(cfg.schedule, theta, self.depth, cfg.k_cap) {
                Some(next) if next.k() <= cfg.k_cap => next,
                Some(_) => return Err(self.exceeded(oracle, theta, posterior)),
                None => {
                    if self.wants_past_cap(theta) {
                        return Err(self.exceeded(oracle, theta, posterior));
                    }
                    continue;
                }
            };
            self.advance(oracle, theta, posterior, next);
        }
        Err(self.exceeded(oracle, theta, posterior))
    }

    /// Standard schedule only: true when no admissible `K' ≥ 2K` fits under
    /// the cap but a larger one would be feasible.
    fn wants_past_cap(&self, theta: ThetaInterval) -> bool {
        let cfg = self.config;
        if cfg.schedule != Schedule::Standard {
            return false;
        }
        let cap = cfg.k_cap.saturating_mul(2).saturating_add(1);
        if self.depth.oracle_factor().saturating_mul(2) < cap {
            return false;
        }
        find_next_k(theta, self.depth, u64::MAX / 4) > self.depth
    }

    fn stage_interval(&self) -> Result<(ProbInterval, Option<Posterior>)> {
        let kind = self.config.interval;
        if let Some(freq) = kind.frequentist() {
            return Ok((frequentist_interval(freq, self.shots, self.alpha_t)?, None));
        }
        let posterior = match self.prior {
            Some(Posterior::Normal(prior)) => {
                Posterior::Normal(normal_posterior_update(prior, self.shots)?)
            }
            Some(Posterior::Beta(prior)) => {
                Posterior::Beta(beta_posterior_update(prior, self.shots))
            }
            None => return Err(Error::InvalidConfig("Bayesian run without a prior")),
        };
        Ok((credible_interval(posterior, self.alpha_t)?, Some(posterior)))
    }

    fn close_stage(&mut self, theta: ThetaInterval, posterior: Option<Posterior>) {
        self.stages.push(StageRecord {
            t: self.t,
            depth: self.depth,
            quadrant: self.quadrant,
            shots: self.shots,
            iterations: self.iterations,
            theta_interval: theta,
            posterior,
            prior: self.prior,
            prior_fallback: self.prior_fallback,
        });
    }

    fn advance(
        &mut self,
        oracle: &mut AmplitudeOracle,
        theta: ThetaInterval,
        posterior: Option<Posterior>,
        next: GroverDepth,
    ) {
        self.close_stage(theta, posterior);
        let next_quadrant = containment_check(theta, next, &[]).quadrant;

        let fresh = initial_prior(self.config.interval);
        let carried = match posterior {
            Some(post) if self.config.carry_prior => Some(self.transform(oracle, post, next)),
            _ => None,
        };
        (self.prior, self.prior_fallback) = match carried {
            Some(Ok(prior)) => (Some(prior), false),
            Some(Err(_)) => (fresh, true),
            None => (fresh, false),
        };

        self.t += 1;
        self.depth = next;
        self.quadrant = next_quadrant;
        self.shots = ShotSummary::default();
        self.iterations = 0;
        oracle.begin_stage(self.t as u64);
    }

    fn transform(
        &self,
        oracle: &AmplitudeOracle,
        posterior: Posterior,
        next: GroverDepth,
    ) -> Result<Posterior> {
        match posterior {
            Posterior::Normal(post) => {
                normal_prior_transform(post, self.depth, next, self.quadrant).map(Posterior::Normal)
            }
            Posterior::Beta(post) => {
                let mut rng = oracle.prior_rng(self.t as u64);
                beta_prior_transform(
                    post,
                    self.depth,
                    next,
                    self.quadrant,
                    self.config.prior_samples,
                    &mut rng,
                )
                .map(Posterior::Beta)
            }
        }
    }

    fn finish(self, oracle: &mut AmplitudeOracle, theta: ThetaInterval) -> EstimationResult {
        let a_interval = theta.to_amplitudes();
        EstimationResult {
            a_interval,
            a_point: a_interval.center(),
            ledger: oracle.take_ledger(),
            stages: self.stages,
            weighting: self.config.weighting,
        }
    }

    fn exceeded(
        mut self,
        oracle: &mut AmplitudeOracle,
        theta: ThetaInterval,
        posterior: Option<Posterior>,
    ) -> Error {
        self.close_stage(theta, posterior);
        Error::BudgetExceeded(Box::new(self.finish(oracle, theta)))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::angle::{quadrant_index, Angle};
    use crate::oracle::Weighting;

    fn oracle(a: f64, seed: u64) -> AmplitudeOracle {
        AmplitudeOracle::new(Angle::new(libm::asin(libm::sqrt(a))).unwrap(), seed)
    }

    const KINDS: [IntervalKind; 5] = [
        IntervalKind::ChernoffHoeffding,
        IntervalKind::ClopperPearson,
        IntervalKind::Wald,
        IntervalKind::NormalBayes,
        IntervalKind::BetaBayes,
    ];

    fn run(
        kind: IntervalKind,
        schedule: Schedule,
        a: f64,
        eps: f64,
        seed: u64,
    ) -> Result<EstimationResult> {
        let cfg = EstimatorConfig::new(eps, 0.05, kind).with_schedule(schedule);
        let mut o = oracle(a, seed);
        if kind.is_bayesian() {
            biqae_run(&mut o, &cfg)
        } else {
            iqae_run(&mut o, &cfg)
        }
    }

    #[test]
    fn runs_reach_target_radius() {
        for kind in KINDS {
            for schedule in [Schedule::Standard, Schedule::Hybrid3, Schedule::Hybrid35] {
                for (seed, a) in [0.02, 0.3, 0.5, 0.77, 0.99].into_iter().enumerate() {
                    let res = run(kind, schedule, a, 1e-4, seed as u64).unwrap();
                    assert!(res.a_interval.radius() <= 1e-4);
                    assert!(res.a_interval.contains(res.a_point));
                    let ks: Vec<u64> = res.stages.iter().map(|s| s.depth.oracle_factor()).collect();
                    assert!(ks.windows(2).all(|w| w[0] < w[1]), "{ks:?}");
                }
            }
        }
    }

    #[test]
    fn hybrid3_multiplies_by_three() {
        for seed in 0..20 {
            let res = run(
                IntervalKind::ChernoffHoeffding,
                Schedule::Hybrid3,
                0.5,
                1e-4,
                seed,
            )
            .unwrap();
            for (t, s) in res.stages.iter().enumerate() {
                assert_eq!(s.depth.oracle_factor(), 3u64.pow(t as u32));
            }
        }
    }

    #[test]
    fn hybrid35_multiplies_by_three_or_five() {
        for seed in 0..20 {
            let res = run(
                IntervalKind::ChernoffHoeffding,
                Schedule::Hybrid35,
                0.3,
                1e-4,
                seed,
            )
            .unwrap();
            for w in res.stages.windows(2) {
                let ratio = w[1].depth.oracle_factor() / w[0].depth.oracle_factor();
                assert!(ratio == 3 || ratio == 5);
            }
        }
    }

    #[test]
    fn tracked_quadrant_matches_truth() {
        let mut correct = 0;
        let reps = 100;
        for seed in 0..reps {
            let mut o = oracle(0.37, seed);
            let theta = o.theta_true();
            let cfg = EstimatorConfig::new(1e-5, 0.05, IntervalKind::BetaBayes);
            let res = biqae_run(&mut o, &cfg).unwrap();
            if res
                .stages
                .iter()
                .all(|s| s.quadrant == quadrant_index(theta, s.depth))
            {
                correct += 1;
            }
        }
        assert!(correct >= 95, "{correct}");
    }

    #[test]
    fn runs_are_seed_deterministic() {
        for kind in KINDS {
            assert_eq!(
                run(kind, Schedule::Standard, 0.4, 1e-5, 9).unwrap(),
                run(kind, Schedule::Standard, 0.4, 1e-5, 9).unwrap()
            );
        }
    }

    #[test]
    fn first_normal_interval_inside_hoeffding() {
        // with the noninformative prior the first batch gives a normal
        // interval nested inside the Chernoff-Hoeffding one
        for s in 0..=10 {
            let shots = ShotSummary::new(10, s).unwrap();
            let alpha = 0.05 / 7.0;
            let post = normal_posterior_update(NormalParams::noninformative(), shots).unwrap();
            let bayes = credible_interval(Posterior::Normal(post), alpha).unwrap();
            let ch = frequentist_interval(
                crate::statkit::FrequentistKind::ChernoffHoeffding,
                shots,
                alpha,
            )
            .unwrap();
            assert!(ch.lo <= bayes.lo + 1e-15 && bayes.hi <= ch.hi + 1e-15);
        }
    }

    #[test]
    fn wald_matches_noninformative_normal() {
        for seed in 0..10 {
            let wald = run(IntervalKind::Wald, Schedule::Hybrid35, 0.3, 1e-4, seed).unwrap();
            let cfg = EstimatorConfig::new(1e-4, 0.05, IntervalKind::NormalBayes)
                .with_schedule(Schedule::Hybrid35)
                .with_carry_prior(false);
            let bayes = biqae_run(&mut oracle(0.3, seed), &cfg).unwrap();
            assert_eq!(wald.ledger, bayes.ledger);
            assert!((wald.a_interval.lo - bayes.a_interval.lo).abs() < 1e-15);
        }
    }

    #[test]
    fn kind_mismatch_is_rejected() {
        let cfg = EstimatorConfig::new(1e-3, 0.05, IntervalKind::BetaBayes);
        assert!(iqae_run(&mut oracle(0.5, 1), &cfg).is_err());
        let cfg = EstimatorConfig::new(1e-3, 0.05, IntervalKind::ClopperPearson);
        assert!(biqae_run(&mut oracle(0.5, 1), &cfg).is_err());
    }

    #[test]
    fn small_cap_reports_budget_exceeded() {
        for schedule in [Schedule::Standard, Schedule::Hybrid3, Schedule::Hybrid35] {
            let cfg = EstimatorConfig::new(1e-6, 0.05, IntervalKind::ClopperPearson)
                .with_schedule(schedule)
                .with_k_cap(20);
            match iqae_run(&mut oracle(0.5, 3), &cfg) {
                Err(Error::BudgetExceeded(partial)) => {
                    assert!(partial.max_depth().k() <= 20);
                    assert!(!partial.stages.is_empty());
                }
                other => panic!("expected budget exceeded, got {other:?}"),
            }
        }
    }

    #[test]
    fn ledger_matches_stage_records() {
        let res = run(IntervalKind::BetaBayes, Schedule::Standard, 0.5, 1e-5, 2).unwrap();
        let from_stages: u64 = res.stages.iter().map(StageRecord::oracle_calls).sum();
        assert_eq!(from_stages, res.ledger.total(Weighting::OracleCalls));
        assert_eq!(res.complexity(), from_stages);
    }

    #[test]
    fn disabled_carry_over_restarts_from_jeffreys() {
        let cfg = EstimatorConfig::new(1e-5, 0.05, IntervalKind::BetaBayes).with_carry_prior(false);
        let res = biqae_run(&mut oracle(0.5, 4), &cfg).unwrap();
        assert!(res
            .stages
            .iter()
            .all(|s| s.prior == Some(Posterior::Beta(BetaParams::JEFFREYS))));
    }
}
