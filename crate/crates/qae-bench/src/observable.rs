use qae_core::oracle::{repetition_seed, Weighting};
use qae_core::Error;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::experiment::run_single;
use crate::{BenchError, ExperimentRecord, Method, Result, RunSettings};

/// One weighted term `c · ⟨P⟩` of an observable, with `⟨P⟩ = 1 - 2a`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ObservableTerm {
    pub coeff: f64,
    pub a: f64,
}

impl ObservableTerm {
    pub fn new(coeff: f64, a: f64) -> Result<Self> {
        let term = Self { coeff, a };
        term.validate()?;
        Ok(term)
    }

    fn validate(&self) -> Result<()> {
        if !self.coeff.is_finite() {
            return Err(BenchError::Invalid(format!(
                "coefficient {} is not finite",
                self.coeff
            )));
        }
        if !(0.0..=1.0).contains(&self.a) {
            return Err(Error::Domain {
                what: "amplitude",
                value: self.a,
            }
            .into());
        }
        Ok(())
    }

    pub fn expectation(&self) -> f64 {
        1.0 - 2.0 * self.a
    }

    /// Weighted contribution of an amplitude interval, endpoints ordered.
    fn contribution(&self, lo: f64, hi: f64) -> (f64, f64) {
        let (x, y) = (self.coeff * (1.0 - 2.0 * hi), self.coeff * (1.0 - 2.0 * lo));
        if x <= y {
            (x, y)
        } else {
            (y, x)
        }
    }
}

/// `Σ c · (1 - 2a)`.
pub fn true_value(terms: &[ObservableTerm]) -> f64 {
    terms.iter().map(|t| t.coeff * t.expectation()).sum()
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ObservableEstimate {
    pub lo: f64,
    pub hi: f64,
    pub point: f64,
    /// One record per term, in term order.
    pub records: Vec<ExperimentRecord>,
}

impl ObservableEstimate {
    pub fn contains(&self, value: f64) -> bool {
        self.lo <= value && value <= self.hi
    }

    pub fn complexity(&self, weighting: Weighting) -> u64 {
        self.records.iter().map(|r| r.complexity(weighting)).sum()
    }
}

/// Estimates every term at level `α/|terms|` and accuracy `epsilon_term`,
/// then combines the term intervals by interval arithmetic. Term `i` uses
/// seed `repetition_seed(seed, i)`. A term that hits the depth cap fails the
/// whole estimate.
pub fn estimate_observable(
    terms: &[ObservableTerm],
    epsilon_term: f64,
    alpha: f64,
    method: Method,
    seed: u64,
    settings: &RunSettings,
) -> Result<ObservableEstimate> {
    if terms.is_empty() {
        return Err(BenchError::Empty("observable terms"));
    }
    for term in terms {
        term.validate()?;
    }
    if !(alpha > 0.0 && alpha < 1.0) {
        return Err(Error::InvalidLevel(alpha).into());
    }
    let alpha_term = alpha / terms.len() as f64;
    let records: Vec<ExperimentRecord> = terms
        .par_iter()
        .enumerate()
        .map(|(i, term)| {
            let i = i as u64;
            run_single(
                method,
                term.a,
                epsilon_term,
                alpha_term,
                i,
                repetition_seed(seed, i),
                settings,
            )
        })
        .collect::<Result<_>>()?;
    if let Some(failed) = records.iter().find(|r| r.failure.is_some()) {
        return Err(BenchError::BudgetExceeded(format!(
            "term {}: {}",
            failed.rep,
            failed.failure.as_deref().unwrap_or_default()
        )));
    }
    let (mut lo, mut hi, mut point) = (0.0, 0.0, 0.0);
    for (term, record) in terms.iter().zip(&records) {
        let (x, y) = term.contribution(record.lo, record.hi);
        lo += x;
        hi += y;
        point += term.coeff * (1.0 - 2.0 * record.point);
    }
    Ok(ObservableEstimate {
        lo,
        hi,
        point,
        records,
    })
}
