use core::fmt;
use core::str::FromStr;

use qae_core::angle::Angle;
use qae_core::estimators::{
    biqae_run, classical_budget, classical_qae, iqae_run, EstimationResult, EstimatorConfig,
    IntervalKind, Schedule,
};
use qae_core::oracle::AmplitudeOracle;
use qae_core::statkit::FrequentistKind;
use serde::{Deserialize, Serialize};

use crate::experiment::RunSettings;
use crate::BenchError;

/// Estimator selected by name on the command line and in record files.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "String", into = "String")]
pub enum Method {
    /// Unamplified sampling with the Chernoff-Hoeffding shot budget for `ε`.
    Classical,
    IqaeCh,
    IqaeCp,
    /// Base-3 hybrid schedule with normal-approximation intervals.
    Hybrid3,
    /// Base-3/base-5 hybrid schedule with normal-approximation intervals.
    Hybrid35,
    BiqaeNormal,
    BiqaeBeta,
}

impl Method {
    pub const ALL: [Method; 7] = [
        Method::Classical,
        Method::IqaeCh,
        Method::IqaeCp,
        Method::Hybrid3,
        Method::Hybrid35,
        Method::BiqaeNormal,
        Method::BiqaeBeta,
    ];

    pub fn tag(self) -> &'static str {
        match self {
            Method::Classical => "classical",
            Method::IqaeCh => "iqae-ch",
            Method::IqaeCp => "iqae-cp",
            Method::Hybrid3 => "hybrid3",
            Method::Hybrid35 => "hybrid35",
            Method::BiqaeNormal => "biqae-normal",
            Method::BiqaeBeta => "biqae-beta",
        }
    }

    /// Estimator configuration, or `None` for classical sampling.
    pub fn config(
        self,
        epsilon: f64,
        alpha: f64,
        settings: &RunSettings,
    ) -> Option<EstimatorConfig> {
        let (kind, schedule) = match self {
            Method::Classical => return None,
            Method::IqaeCh => (IntervalKind::ChernoffHoeffding, Schedule::Standard),
            Method::IqaeCp => (IntervalKind::ClopperPearson, Schedule::Standard),
            Method::Hybrid3 => (IntervalKind::Wald, Schedule::Hybrid3),
            Method::Hybrid35 => (IntervalKind::Wald, Schedule::Hybrid35),
            Method::BiqaeNormal => (IntervalKind::NormalBayes, Schedule::Standard),
            Method::BiqaeBeta => (IntervalKind::BetaBayes, Schedule::Standard),
        };
        Some(
            EstimatorConfig::new(epsilon, alpha, settings.interval.unwrap_or(kind))
                .with_schedule(schedule)
                .with_n_incre(settings.n_incre)
                .with_k_cap(settings.k_cap)
                .with_weighting(settings.weighting)
                .with_prior_samples(settings.prior_samples)
                .with_carry_prior(settings.carry_prior),
        )
    }

    /// One estimation run against a fresh oracle.
    pub fn estimate(
        self,
        theta: Angle,
        seed: u64,
        epsilon: f64,
        alpha: f64,
        settings: &RunSettings,
    ) -> qae_core::Result<EstimationResult> {
        let mut oracle = AmplitudeOracle::new(theta, seed);
        match self.config(epsilon, alpha, settings) {
            None => {
                let n = classical_budget(epsilon, alpha)?;
                let mut res =
                    classical_qae(&mut oracle, n, alpha, FrequentistKind::ChernoffHoeffding)?;
                res.weighting = settings.weighting;
                Ok(res)
            }
            Some(cfg) if cfg.interval.is_bayesian() => biqae_run(&mut oracle, &cfg),
            Some(cfg) => iqae_run(&mut oracle, &cfg),
        }
    }
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.tag())
    }
}

impl FromStr for Method {
    type Err = BenchError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Method::ALL
            .into_iter()
            .find(|m| m.tag() == s)
            .ok_or_else(|| BenchError::UnknownMethod(s.to_owned()))
    }
}

impl TryFrom<String> for Method {
    type Error = BenchError;

    fn try_from(s: String) -> Result<Self, Self::Error> {
        s.parse()
    }
}

impl From<Method> for String {
    fn from(m: Method) -> Self {
        m.tag().to_owned()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use qae_core::angle::{amplitude_to_angle, Amplitude};

    #[test]
    fn tags_round_trip() {
        for m in Method::ALL {
            assert_eq!(m.tag().parse::<Method>().unwrap(), m);
        }
        assert!("iqae".parse::<Method>().is_err());
    }

    #[test]
    fn hybrids_use_normal_approximation() {
        let s = RunSettings::default();
        assert_eq!(
            Method::Hybrid35.config(1e-3, 0.05, &s).unwrap().interval,
            IntervalKind::Wald
        );
        assert!(Method::Classical.config(1e-3, 0.05, &s).is_none());
    }

    #[test]
    fn every_method_reaches_target() {
        let theta = amplitude_to_angle(Amplitude::new(0.3).unwrap());
        for m in Method::ALL {
            let res = m
                .estimate(theta, 7, 1e-3, 0.05, &RunSettings::default())
                .unwrap();
            assert!(res.a_interval.radius() <= 1e-3, "{m}");
        }
    }
}
