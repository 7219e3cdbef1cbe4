use alloc::vec;

use crate::angle::{branch_angle, GroverDepth, QuadrantIndex, ThetaInterval};
use crate::oracle::{AmplitudeOracle, Weighting};
use crate::statkit::{check_level, frequentist_interval, FrequentistKind, ShotSummary};
use crate::{Error, Result};

use super::{EstimationResult, StageRecord};

/// Shots needed for a Chernoff-Hoeffding radius of at most `epsilon`:
/// `⌈ln(2/α) / (2ε²)⌉`.
pub fn classical_budget(epsilon: f64, alpha: f64) -> Result<u64> {
    let alpha = check_level(alpha)?;
    if !(epsilon > 0.0 && epsilon < 1.0) {
        return Err(Error::Domain {
            what: "epsilon",
            value: epsilon,
        });
    }
    Ok(libm::ceil(libm::log(2.0 / alpha) / (2.0 * epsilon * epsilon)) as u64)
}

/// Shots giving a sample-mean standard error of `epsilon` at amplitude `a`:
/// `⌈a(1-a)/ε²⌉`.
pub fn classical_shots_for_mse(a: f64, epsilon: f64) -> u64 {
    // small guard so exact products like 0.25/1e-4 do not round up to the next integer
    libm::ceil(a * (1.0 - a) / (epsilon * epsilon) - 1e-9).max(1.0) as u64
}

/// Unamplified sampling: `n` shots at `k = 0`, interval of the requested kind.
pub fn classical_qae(
    oracle: &mut AmplitudeOracle,
    n: u64,
    alpha: f64,
    kind: FrequentistKind,
) -> Result<EstimationResult> {
    if n == 0 {
        return Err(Error::Domain {
            what: "shot count",
            value: 0.0,
        });
    }
    oracle.begin_stage(0);
    let successes = oracle.sample_shots(GroverDepth::ZERO, n);
    let shots = ShotSummary::new(n, successes)?;
    let a_interval = frequentist_interval(kind, shots, alpha)?;
    let theta_interval = ThetaInterval::new(
        libm::asin(libm::sqrt(a_interval.lo)),
        libm::asin(libm::sqrt(a_interval.hi)),
    )?;
    let stage = StageRecord {
        t: 0,
        depth: GroverDepth::ZERO,
        quadrant: QuadrantIndex::ZERO,
        shots,
        iterations: 1,
        theta_interval,
        posterior: None,
        prior: None,
        prior_fallback: false,
    };
    Ok(EstimationResult {
        a_interval,
        a_point: a_interval.center(),
        ledger: oracle.take_ledger(),
        stages: vec![stage],
        weighting: Weighting::OracleCalls,
    })
}

/// Amplified maximum-likelihood estimate with a known quadrant:
/// `â = sin²(f_k(X̄))`.
pub fn aae_estimate(
    oracle: &mut AmplitudeOracle,
    depth: GroverDepth,
    n: u64,
    l: QuadrantIndex,
) -> Result<f64> {
    if l.value() >= depth.oracle_factor() {
        return Err(Error::QuadrantOutOfRange {
            l: l.value(),
            big_k: depth.oracle_factor(),
        });
    }
    if n == 0 {
        return Err(Error::Domain {
            what: "shot count",
            value: 0.0,
        });
    }
    let mean = oracle.sample_shots(depth, n) as f64 / n as f64;
    aae_from_mean(mean, depth, l)
}

fn aae_from_mean(mean: f64, depth: GroverDepth, l: QuadrantIndex) -> Result<f64> {
    let s = libm::sin(branch_angle(mean, depth, l)?);
    Ok(s * s)
}
