//! Seeded Bernoulli simulation of measuring `Q^k A` and oracle-call accounting.
//!
//! Each repetition owns one [`AmplitudeOracle`]. Its random stream is a
//! ChaCha8 generator keyed by the repetition seed, with one ChaCha stream per
//! stage for shots and a second, disjoint stream per stage for the Monte
//! Carlo prior transform. Two estimators given the same seed therefore see
//! the same randomness at matching stages.

use alloc::vec::Vec;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Binomial, Distribution};

use crate::angle::{amplified_probability, Angle, GroverDepth};

/// Which count a ledger total reports.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub enum Weighting {
    /// `Σ max(k, 1)·n`: Grover applications, with unamplified shots counted once.
    GroverCalls,
    /// `Σ (2k+1)·n`: oracle accesses.
    #[default]
    OracleCalls,
    /// `Σ n`.
    Shots,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct LedgerEntry {
    pub depth: GroverDepth,
    pub shots: u64,
}

impl LedgerEntry {
    pub fn weight(&self, weighting: Weighting) -> u64 {
        let per_shot = match weighting {
            Weighting::GroverCalls => self.depth.k().max(1),
            Weighting::OracleCalls => self.depth.oracle_factor(),
            Weighting::Shots => 1,
        };
        per_shot * self.shots
    }
}

/// Shots taken per Grover depth, in the order they were taken. Consecutive
/// batches at the same depth are merged into one entry.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct ShotLedger {
    entries: Vec<LedgerEntry>,
    grover_calls: u64,
    oracle_calls: u64,
    shots: u64,
}

impl ShotLedger {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn record(&mut self, depth: GroverDepth, shots: u64) {
        if shots == 0 {
            return;
        }
        let entry = LedgerEntry { depth, shots };
        self.grover_calls += entry.weight(Weighting::GroverCalls);
        self.oracle_calls += entry.weight(Weighting::OracleCalls);
        self.shots += shots;
        match self.entries.last_mut() {
            Some(last) if last.depth == depth => last.shots += shots,
            _ => self.entries.push(entry),
        }
    }

    pub fn entries(&self) -> &[LedgerEntry] {
        &self.entries
    }

    pub fn total(&self, weighting: Weighting) -> u64 {
        match weighting {
            Weighting::GroverCalls => self.grover_calls,
            Weighting::OracleCalls => self.oracle_calls,
            Weighting::Shots => self.shots,
        }
    }

    /// Largest Grover depth that was sampled, or zero for an empty ledger.
    pub fn max_depth(&self) -> GroverDepth {
        self.entries
            .iter()
            .map(|e| e.depth)
            .max()
            .unwrap_or(GroverDepth::ZERO)
    }

    /// Appends every entry of `other`.
    pub fn extend(&mut self, other: &ShotLedger) {
        for e in &other.entries {
            self.record(e.depth, e.shots);
        }
    }
}

/// Free-function form of [`ShotLedger::total`].
pub fn ledger_total(ledger: &ShotLedger, weighting: Weighting) -> u64 {
    ledger.total(weighting)
}

/// Circuit depth of the deepest circuit, given unit depths for `A` and `Q`.
pub fn circuit_depth(ledger: &ShotLedger, depth_a: u64, depth_q: u64) -> u64 {
    depth_a + ledger.max_depth().k() * depth_q
}

/// Mixes a master seed and a repetition index into a repetition seed.
pub fn repetition_seed(master: u64, rep: u64) -> u64 {
    splitmix64(master ^ splitmix64(rep.wrapping_add(0x6a09_e667_f3bc_c909)))
}

fn splitmix64(x: u64) -> u64 {
    let mut z = x.wrapping_add(0x9e37_79b9_7f4a_7c15);
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    z ^ (z >> 31)
}

/// Exact simulator of the amplified measurement with a hidden angle.
#[derive(Debug, Clone)]
pub struct AmplitudeOracle {
    theta: Angle,
    seed: u64,
    rng: ChaCha8Rng,
    ledger: ShotLedger,
}

impl AmplitudeOracle {
    pub fn new(theta: Angle, seed: u64) -> Self {
        Self {
            theta,
            seed,
            rng: stage_rng(seed, 0, Lane::Shots),
            ledger: ShotLedger::new(),
        }
    }

    /// Ground truth, for tests and coverage checks.
    pub fn theta_true(&self) -> Angle {
        self.theta
    }

    pub fn seed(&self) -> u64 {
        self.seed
    }

    /// Switches the shot stream to the one reserved for `stage`.
    pub fn begin_stage(&mut self, stage: u64) {
        self.rng = stage_rng(self.seed, stage, Lane::Shots);
    }

    /// Generator for the prior transform leaving `stage`, independent of the shot stream.
    pub fn prior_rng(&self, stage: u64) -> ChaCha8Rng {
        stage_rng(self.seed, stage, Lane::Prior)
    }

    /// Measures `n` shots of `Q^k A` and returns the number of good outcomes.
    pub fn sample_shots(&mut self, depth: GroverDepth, n: u64) -> u64 {
        if n == 0 {
            return 0;
        }
        let p = amplified_probability(self.theta, depth);
        let successes = if p <= 0.0 {
            0
        } else if p >= 1.0 {
            n
        } else {
            Binomial::new(n, p)
                .map(|b| b.sample(&mut self.rng))
                .unwrap_or(0)
        };
        self.ledger.record(depth, n);
        successes
    }

    pub fn ledger(&self) -> &ShotLedger {
        &self.ledger
    }

    pub fn take_ledger(&mut self) -> ShotLedger {
        core::mem::take(&mut self.ledger)
    }
}

#[derive(Clone, Copy)]
enum Lane {
    Shots = 0,
    Prior = 1,
}

fn stage_rng(seed: u64, stage: u64, lane: Lane) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(stage.wrapping_mul(2).wrapping_add(lane as u64));
    rng
}
