use core::f64::consts::FRAC_PI_2;

use proptest::prelude::*;
use qae_core::angle::*;
use qae_core::oracle::{ShotLedger, Weighting};
use qae_core::statkit::*;

fn depth_strategy() -> impl Strategy<Value = GroverDepth> {
    (0u64..5_000).prop_map(GroverDepth::new)
}

proptest! {
    #[test]
    fn amplitude_angle_round_trip(a in 0.0f64..=1.0) {
        let back = angle_to_amplitude(amplitude_to_angle(Amplitude::new(a).unwrap()));
        prop_assert!((back.value() - a).abs() < 1e-12);
    }

    #[test]
    fn quadrant_in_range(theta in 0.0f64..=FRAC_PI_2, depth in depth_strategy()) {
        let l = quadrant_index(Angle::new(theta).unwrap(), depth);
        prop_assert!(l.value() < depth.oracle_factor());
    }

    #[test]
    fn branch_recovers_angle(theta in 0.0f64..=FRAC_PI_2, depth in depth_strategy()) {
        let angle = Angle::new(theta).unwrap();
        let l = quadrant_index(angle, depth);
        let p = amplified_probability(angle, depth);
        let back = branch_angle(p, depth, l).unwrap();
        let tol = 1e-7 / depth.oracle_factor() as f64 + 1e-12;
        prop_assert!((back - theta).abs() < tol.max(1e-9), "{back} vs {theta}");
    }

    #[test]
    fn inverted_interval_contains_angle(
        theta in 0.01f64..1.56,
        depth in depth_strategy(),
        lo_gap in 0.0f64..0.2,
        hi_gap in 0.0f64..0.2,
    ) {
        let angle = Angle::new(theta).unwrap();
        let l = quadrant_index(angle, depth);
        let p = amplified_probability(angle, depth);
        let interval = ProbInterval::truncated(p - lo_gap, p + hi_gap);
        let back = invert_amplified(interval, depth, l).unwrap();
        let slack = 1e-9;
        prop_assert!(back.lo <= theta + slack && theta <= back.hi + slack);
        prop_assert!(back.lo <= back.hi);
    }

    #[test]
    fn branch_monotone_in_p(p1 in 0.0f64..=1.0, p2 in 0.0f64..=1.0, depth in depth_strategy(), pick in 0u64..u64::MAX) {
        let l = QuadrantIndex::new(pick % depth.oracle_factor(), depth).unwrap();
        let (lo, hi) = if p1 <= p2 { (p1, p2) } else { (p2, p1) };
        let (f_lo, f_hi) = (branch_angle(lo, depth, l).unwrap(), branch_angle(hi, depth, l).unwrap());
        if l.is_even() { prop_assert!(f_lo <= f_hi) } else { prop_assert!(f_lo >= f_hi) }
    }

    #[test]
    fn beta_update_is_additive(a0 in 0.1f64..50.0, b0 in 0.1f64..50.0, n1 in 1u64..500, n2 in 1u64..500, f1 in 0.0f64..=1.0, f2 in 0.0f64..=1.0) {
        let s1 = ShotSummary::new(n1, (f1 * n1 as f64) as u64).unwrap();
        let s2 = ShotSummary::new(n2, (f2 * n2 as f64) as u64).unwrap();
        let prior = BetaParams::new(a0, b0).unwrap();
        let seq = beta_posterior_update(beta_posterior_update(prior, s1), s2);
        let joint = beta_posterior_update(prior, s1.merge(s2));
        prop_assert!((seq.alpha_shape() - joint.alpha_shape()).abs() < 1e-9);
        prop_assert!((seq.beta_shape() - joint.beta_shape()).abs() < 1e-9);
    }

    #[test]
    fn normal_update_shrinks_variance(mean in 0.01f64..0.99, var in 1e-6f64..1.0, n in 1u64..1000, frac in 0.0f64..=1.0) {
        let prior = NormalParams::new(mean, var).unwrap();
        let shots = ShotSummary::new(n, (frac * n as f64) as u64).unwrap();
        let post = normal_posterior_update(prior, shots).unwrap();
        prop_assert!(post.variance < prior.variance);
        let (lo, hi) = if mean <= shots.mean() { (mean, shots.mean()) } else { (shots.mean(), mean) };
        prop_assert!(post.mean >= lo - 1e-12 && post.mean <= hi + 1e-12);
    }

    #[test]
    fn frequentist_intervals_contain_mean(n in 1u64..5000, frac in 0.0f64..=1.0, alpha in 0.001f64..0.5) {
        let shots = ShotSummary::new(n, (frac * n as f64) as u64).unwrap();
        for kind in [FrequentistKind::ChernoffHoeffding, FrequentistKind::ClopperPearson, FrequentistKind::Wald] {
            let ci = frequentist_interval(kind, shots, alpha).unwrap();
            prop_assert!(0.0 <= ci.lo && ci.hi <= 1.0);
            prop_assert!(ci.contains(shots.mean()), "{kind:?} {ci:?}");
        }
    }

    #[test]
    fn credible_interval_tightens_with_level(a in 0.5f64..500.0, b in 0.5f64..500.0) {
        let post = Posterior::Beta(BetaParams::new(a, b).unwrap());
        let wide = credible_interval(post, 0.01).unwrap();
        let narrow = credible_interval(post, 0.2).unwrap();
        prop_assert!(wide.lo <= narrow.lo && narrow.hi <= wide.hi);
    }

    #[test]
    fn beta_inverse_consistent(q in 1e-6f64..(1.0 - 1e-6), a in 0.5f64..1e4, b in 0.5f64..1e4) {
        let params = BetaParams::new(a, b).unwrap();
        let x = beta_inv_cdf(q, params);
        prop_assert!((params.cdf(x) - q).abs() < 1e-9);
    }

    #[test]
    fn ledger_totals_are_additive(
        left in prop::collection::vec((0u64..1000, 1u64..1000), 0..20),
        right in prop::collection::vec((0u64..1000, 1u64..1000), 0..20),
    ) {
        let build = |entries: &[(u64, u64)]| {
            let mut ledger = ShotLedger::new();
            for &(k, n) in entries {
                ledger.record(GroverDepth::new(k), n);
            }
            ledger
        };
        let (l, r) = (build(&left), build(&right));
        let mut joined = l.clone();
        joined.extend(&r);
        for w in [Weighting::GroverCalls, Weighting::OracleCalls, Weighting::Shots] {
            prop_assert_eq!(joined.total(w), l.total(w) + r.total(w));
        }
        prop_assert!(joined.total(Weighting::OracleCalls) >= joined.total(Weighting::GroverCalls));
        prop_assert!(joined.total(Weighting::OracleCalls) >= joined.total(Weighting::Shots));
    }
}
