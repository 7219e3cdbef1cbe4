use qae_core::angle::{amplitude_to_angle, Amplitude, Angle};
use qae_core::estimators::*;
use qae_core::oracle::{repetition_seed, AmplitudeOracle, Weighting};
use qae_core::statkit::FrequentistKind;
use qae_core::Error;

fn theta(a: f64) -> Angle {
    amplitude_to_angle(Amplitude::new(a).unwrap())
}

fn run(kind: IntervalKind, schedule: Schedule, a: f64, eps: f64, seed: u64) -> EstimationResult {
    let cfg = EstimatorConfig::new(eps, 0.05, kind).with_schedule(schedule);
    let mut oracle = AmplitudeOracle::new(theta(a), seed);
    if kind.is_bayesian() {
        biqae_run(&mut oracle, &cfg)
    } else {
        iqae_run(&mut oracle, &cfg)
    }
    .unwrap()
}

#[test]
fn stage_radii_shrink_under_standard_schedule() {
    let cases = [
        (IntervalKind::ChernoffHoeffding, Schedule::Standard),
        (IntervalKind::ClopperPearson, Schedule::Standard),
        (IntervalKind::NormalBayes, Schedule::Standard),
        (IntervalKind::BetaBayes, Schedule::Standard),
    ];
    for (kind, schedule) in cases {
        for rep in 0..20 {
            let res = run(kind, schedule, 0.3, 1e-4, repetition_seed(5, rep));
            for w in res.stages.windows(2) {
                assert!(
                    w[1].radius() < w[0].radius(),
                    "{kind:?} {schedule:?} rep {rep}"
                );
            }
        }
    }
}

#[test]
fn final_interval_is_narrow_and_point_is_center() {
    for kind in [IntervalKind::ClopperPearson, IntervalKind::BetaBayes] {
        let res = run(kind, Schedule::Standard, 0.42, 1e-5, 3);
        assert!(res.a_interval.radius() <= 1e-5);
        assert_eq!(res.a_point, res.a_interval.center());
        assert!(res.stage_count() >= 2);
    }
}

#[test]
fn weighting_conventions_order() {
    let res = run(
        IntervalKind::ClopperPearson,
        Schedule::Standard,
        0.5,
        1e-4,
        9,
    );
    let k = res.ledger.total(Weighting::GroverCalls);
    let big_k = res.ledger.total(Weighting::OracleCalls);
    let shots = res.ledger.total(Weighting::Shots);
    assert!(big_k >= k && big_k >= shots);
    assert_eq!(
        big_k,
        res.stages.iter().map(|s| s.oracle_calls()).sum::<u64>()
    );
}

#[test]
fn amplified_runs_use_far_fewer_calls_than_sampling() {
    let eps = 1e-4;
    let classical = classical_budget(eps, 0.05).unwrap();
    let res = run(IntervalKind::BetaBayes, Schedule::Standard, 0.5, eps, 11);
    assert!(res.complexity() * 50 < classical);
}

#[test]
fn classical_budget_meets_target() {
    let eps = 1e-3;
    let n = classical_budget(eps, 0.05).unwrap();
    let mut oracle = AmplitudeOracle::new(theta(0.3), 1);
    let res = classical_qae(&mut oracle, n, 0.05, FrequentistKind::ChernoffHoeffding).unwrap();
    assert!(res.a_interval.radius() <= eps + 1e-15);
    assert_eq!(res.complexity(), n);
}

#[test]
fn budget_exceeded_keeps_partial_trace() {
    let cfg = EstimatorConfig::new(1e-6, 0.05, IntervalKind::ClopperPearson).with_k_cap(50);
    let mut oracle = AmplitudeOracle::new(theta(0.2), 2);
    match iqae_run(&mut oracle, &cfg) {
        Err(Error::BudgetExceeded(partial)) => {
            assert!(partial.max_depth().k() <= 50);
            assert!(!partial.stages.is_empty());
            assert!(partial.a_interval.radius() > 1e-6);
        }
        other => panic!("expected budget exceeded, got {other:?}"),
    }
}

#[test]
fn boundary_amplitudes_finish() {
    for a in [0.0, 1.0, 1e-6, 1.0 - 1e-6] {
        for kind in [
            IntervalKind::ClopperPearson,
            IntervalKind::NormalBayes,
            IntervalKind::BetaBayes,
        ] {
            let res = run(kind, Schedule::Standard, a, 1e-3, 4);
            assert!(res.a_interval.radius() <= 1e-3);
            assert!(
                res.a_interval.contains(a) || (res.a_point - a).abs() < 2e-3,
                "{kind:?} a={a}"
            );
        }
    }
}
