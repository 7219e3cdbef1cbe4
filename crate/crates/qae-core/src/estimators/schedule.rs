use core::f64::consts::{FRAC_PI_2, PI};

use crate::angle::{containment_check, GroverDepth, ReferenceBase, ThetaInterval};

use super::Schedule;

/// `max(1, ⌈log₃(π/4ε)⌉)`: the number of stages the level is split over.
pub fn stage_count_bound(epsilon: f64) -> u32 {
    let t = libm::ceil(libm::log(PI / (4.0 * epsilon)) / libm::log(3.0));
    if t.is_finite() && t >= 1.0 {
        t as u32
    } else {
        1
    }
}

/// Per-stage level `α / T_max`.
pub fn alpha_allocation(epsilon: f64, alpha: f64) -> f64 {
    alpha / stage_count_bound(epsilon) as f64
}

/// Largest odd `K' ≥ 2K` with `K' ≤ min(2k_cap+1, K_max)` whose scaled
/// interval fits in one quadrant, where `K_max` is the largest odd `K` with
/// `K·width ≤ π/2`. Returns the current depth when no candidate qualifies.
pub fn find_next_k(interval: ThetaInterval, current: GroverDepth, k_cap: u64) -> GroverDepth {
    let cap = k_cap.saturating_mul(2).saturating_add(1);
    let width = interval.width();
    let k_max = if width > 0.0 {
        let bound = libm::floor(FRAC_PI_2 / width);
        if bound >= cap as f64 {
            cap
        } else {
            bound as u64
        }
    } else {
        cap
    };
    let mut candidate = k_max.min(cap);
    if candidate % 2 == 0 {
        candidate = candidate.saturating_sub(1);
    }
    let floor = current.oracle_factor().saturating_mul(2);
    while candidate >= floor && candidate > current.oracle_factor() {
        let depth = GroverDepth::new((candidate - 1) / 2);
        if containment_check(interval, depth, &[]).feasible {
            return depth;
        }
        candidate -= 2;
    }
    current
}

/// Depth the schedule wants for the next stage, or `None` to stay. The
/// standard schedule honours `k_cap` here; hybrid schedules report the
/// uncapped target and the caller enforces the cap.
pub fn next_depth(
    schedule: Schedule,
    interval: ThetaInterval,
    current: GroverDepth,
    k_cap: u64,
) -> Option<GroverDepth> {
    let big_k = current.oracle_factor();
    let multiplier = match schedule {
        Schedule::Standard => {
            let next = find_next_k(interval, current, k_cap);
            return (next > current).then_some(next);
        }
        Schedule::Hybrid3 => {
            let c = containment_check(interval, current, &[ReferenceBase::Three]);
            c.base3_slot.map(|_| 3)
        }
        Schedule::Hybrid35 => {
            let c = containment_check(
                interval,
                current,
                &[ReferenceBase::Three, ReferenceBase::Five],
            );
            match (c.base5_slot, c.base3_slot) {
                (Some(_), _) => Some(5),
                (None, Some(_)) => Some(3),
                (None, None) => None,
            }
        }
    }?;
    GroverDepth::from_oracle_factor(big_k.checked_mul(multiplier)?).ok()
}
