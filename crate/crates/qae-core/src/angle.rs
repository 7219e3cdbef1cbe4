//! Amplitude, angle and amplified-probability transforms.
//!
//! With `a = sin²θ`, `k` Grover applications turn the success probability into
//! `sin²((2k+1)θ)`. Inverting that map is ambiguous: each probability has
//! `2k+1` preimages in `[0, π/2]`, one per quadrant of the amplified angle.
//! The quadrant index selects the branch, and the functions here keep that
//! bookkeeping explicit.

use core::f64::consts::FRAC_PI_2;

use crate::{Error, Result};

/// Inputs this far outside their nominal domain are clamped; further is an error.
pub const DOMAIN_TOLERANCE: f64 = 1e-12;

fn clamp_to(what: &'static str, value: f64, lo: f64, hi: f64) -> Result<f64> {
    if !value.is_finite() || value < lo - DOMAIN_TOLERANCE || value > hi + DOMAIN_TOLERANCE {
        return Err(Error::Domain { what, value });
    }
    Ok(value.clamp(lo, hi))
}

/// Target probability `a ∈ [0, 1]`.
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct Amplitude(f64);

impl Amplitude {
    pub fn new(a: f64) -> Result<Self> {
        clamp_to("amplitude", a, 0.0, 1.0).map(Self)
    }

    pub fn value(self) -> f64 {
        self.0
    }

    pub fn to_angle(self) -> Angle {
        amplitude_to_angle(self)
    }
}

/// Angle `θ ∈ [0, π/2]` with `a = sin²θ`.
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct Angle(f64);

impl Angle {
    pub fn new(theta: f64) -> Result<Self> {
        clamp_to("angle", theta, 0.0, FRAC_PI_2).map(Self)
    }

    pub fn radians(self) -> f64 {
        self.0
    }

    pub fn to_amplitude(self) -> Amplitude {
        angle_to_amplitude(self)
    }
}

/// Number of Grover applications `k`; each shot then costs `K = 2k+1` oracle calls.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct GroverDepth(u64);

impl GroverDepth {
    pub const ZERO: Self = Self(0);

    pub fn new(k: u64) -> Self {
        Self(k)
    }

    /// Depth with `2k+1 = big_k`; `big_k` must be odd.
    pub fn from_oracle_factor(big_k: u64) -> Result<Self> {
        if big_k.is_multiple_of(2) {
            return Err(Error::EvenOracleFactor(big_k));
        }
        Ok(Self((big_k - 1) / 2))
    }

    pub fn k(self) -> u64 {
        self.0
    }

    /// `K = 2k+1`.
    pub fn oracle_factor(self) -> u64 {
        2 * self.0 + 1
    }
}

/// Quadrant of the amplified angle `Kθ`, in `[0, K-1]`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct QuadrantIndex(u64);

impl QuadrantIndex {
    pub const ZERO: Self = Self(0);

    pub fn new(l: u64, depth: GroverDepth) -> Result<Self> {
        if l >= depth.oracle_factor() {
            return Err(Error::QuadrantOutOfRange {
                l,
                big_k: depth.oracle_factor(),
            });
        }
        Ok(Self(l))
    }

    pub fn value(self) -> u64 {
        self.0
    }

    pub fn is_even(self) -> bool {
        self.0.is_multiple_of(2)
    }
}

/// Closed interval of angles, `0 ≤ lo ≤ hi ≤ π/2`.
#[derive(Debug, Clone, Copy, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct ThetaInterval {
    pub lo: f64,
    pub hi: f64,
}

impl ThetaInterval {
    pub const FULL: Self = Self {
        lo: 0.0,
        hi: FRAC_PI_2,
    };

    pub fn new(lo: f64, hi: f64) -> Result<Self> {
        let lo = clamp_to("angle interval lower end", lo, 0.0, FRAC_PI_2)?;
        let hi = clamp_to("angle interval upper end", hi, 0.0, FRAC_PI_2)?;
        if lo > hi {
            return Err(Error::Domain {
                what: "angle interval width",
                value: hi - lo,
            });
        }
        Ok(Self { lo, hi })
    }

    pub fn point(theta: Angle) -> Self {
        Self {
            lo: theta.0,
            hi: theta.0,
        }
    }

    pub fn width(&self) -> f64 {
        self.hi - self.lo
    }

    pub fn radius(&self) -> f64 {
        0.5 * (self.hi - self.lo)
    }

    pub fn contains(&self, theta: f64) -> bool {
        self.lo <= theta && theta <= self.hi
    }

    /// Image under `θ ↦ sin²θ`, which is increasing on `[0, π/2]`.
    pub fn to_amplitudes(&self) -> ProbInterval {
        let s_lo = libm::sin(self.lo);
        let s_hi = libm::sin(self.hi);
        ProbInterval {
            lo: s_lo * s_lo,
            hi: s_hi * s_hi,
        }
    }
}

/// Closed interval of probabilities, `0 ≤ lo ≤ hi ≤ 1`.
#[derive(Debug, Clone, Copy, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct ProbInterval {
    pub lo: f64,
    pub hi: f64,
}

impl ProbInterval {
    pub const UNIT: Self = Self { lo: 0.0, hi: 1.0 };

    pub fn new(lo: f64, hi: f64) -> Result<Self> {
        let lo = clamp_to("probability interval lower end", lo, 0.0, 1.0)?;
        let hi = clamp_to("probability interval upper end", hi, 0.0, 1.0)?;
        if lo > hi {
            return Err(Error::Domain {
                what: "probability interval width",
                value: hi - lo,
            });
        }
        Ok(Self { lo, hi })
    }

    pub fn point(p: f64) -> Result<Self> {
        Self::new(p, p)
    }

    /// Builds `[lo, hi]` after truncating both ends to `[0, 1]`.
    pub fn truncated(lo: f64, hi: f64) -> Self {
        Self {
            lo: lo.clamp(0.0, 1.0),
            hi: hi.clamp(0.0, 1.0),
        }
    }

    pub fn radius(&self) -> f64 {
        0.5 * (self.hi - self.lo)
    }

    pub fn center(&self) -> f64 {
        0.5 * (self.lo + self.hi)
    }

    pub fn contains(&self, p: f64) -> bool {
        self.lo <= p && p <= self.hi
    }
}

/// `θ = arcsin(√a)`.
pub fn amplitude_to_angle(a: Amplitude) -> Angle {
    Angle(libm::asin(libm::sqrt(a.0)).clamp(0.0, FRAC_PI_2))
}

/// `a = sin²θ`.
pub fn angle_to_amplitude(theta: Angle) -> Amplitude {
    let s = libm::sin(theta.0);
    Amplitude((s * s).clamp(0.0, 1.0))
}

/// `sin²((2k+1)θ)`.
pub fn amplified_probability(theta: Angle, depth: GroverDepth) -> f64 {
    let s = libm::sin(depth.oracle_factor() as f64 * theta.0);
    (s * s).clamp(0.0, 1.0)
}

/// `floor(Kθ / (π/2))`. An amplified angle sitting exactly on a multiple of
/// `π/2` is assigned to the lower of the two adjacent quadrants.
pub fn quadrant_index(theta: Angle, depth: GroverDepth) -> QuadrantIndex {
    let big_k = depth.oracle_factor();
    let x = big_k as f64 * theta.0 / FRAC_PI_2;
    let floor = libm::floor(x);
    let mut l = floor as u64;
    if x == floor && l > 0 {
        l -= 1;
    }
    QuadrantIndex(l.min(big_k - 1))
}

/// Branch `l` of the inverse of `p ↦ sin²(Kθ)`:
/// `(arcsin√p + lπ/2)/K` for even `l`, `(arccos√p + lπ/2)/K` for odd `l`.
pub fn branch_angle(p: f64, depth: GroverDepth, l: QuadrantIndex) -> Result<f64> {
    let big_k = depth.oracle_factor();
    if l.0 >= big_k {
        return Err(Error::QuadrantOutOfRange { l: l.0, big_k });
    }
    let p = clamp_to("probability", p, 0.0, 1.0)?;
    // p is clamped, so √p is already inside the arcsin/arccos domain
    let root = libm::sqrt(p).min(1.0);
    let base = if l.is_even() {
        libm::asin(root)
    } else {
        libm::acos(root)
    };
    Ok(((base + l.0 as f64 * FRAC_PI_2) / big_k as f64).clamp(0.0, FRAC_PI_2))
}

/// Maps a probability interval at oracle factor `K` and quadrant `l` back to
/// an angle interval. Odd branches are decreasing, so their endpoints swap.
pub fn invert_amplified(
    p: ProbInterval,
    depth: GroverDepth,
    l: QuadrantIndex,
) -> Result<ThetaInterval> {
    let at_lo = branch_angle(p.lo, depth, l)?;
    let at_hi = branch_angle(p.hi, depth, l)?;
    let (lo, hi) = if l.is_even() {
        (at_lo, at_hi)
    } else {
        (at_hi, at_lo)
    };
    Ok(ThetaInterval { lo, hi })
}

/// Reference subdivision used by the hybrid schedules: each quadrant is cut
/// into `base` equal slots.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub enum ReferenceBase {
    Three,
    Five,
}

impl ReferenceBase {
    pub fn value(self) -> u64 {
        match self {
            ReferenceBase::Three => 3,
            ReferenceBase::Five => 5,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Containment {
    /// Whether `[K·lo, K·hi]` lies inside a single quadrant.
    pub feasible: bool,
    /// Quadrant holding the scaled lower end.
    pub quadrant: QuadrantIndex,
    /// Slot within the quadrant that fully contains the scaled interval, per base.
    pub base3_slot: Option<u64>,
    pub base5_slot: Option<u64>,
}

impl Containment {
    pub fn slot(&self, base: ReferenceBase) -> Option<u64> {
        match base {
            ReferenceBase::Three => self.base3_slot,
            ReferenceBase::Five => self.base5_slot,
        }
    }
}

/// Checks whether the interval scaled by `K` fits in one quadrant and, for
/// each requested base, in one reference slot of width `(π/2)/base`.
pub fn containment_check(
    interval: ThetaInterval,
    depth: GroverDepth,
    bases: &[ReferenceBase],
) -> Containment {
    let big_k = depth.oracle_factor();
    let scale = big_k as f64 / FRAC_PI_2;
    // scaled endpoints in units of quadrants
    let x_lo = interval.lo * scale;
    let x_hi = interval.hi * scale;
    let q = (libm::floor(x_lo) as u64).min(big_k - 1);
    let q_start = q as f64;
    let feasible = x_hi <= q_start + 1.0;

    let mut out = Containment {
        feasible,
        quadrant: QuadrantIndex(q),
        base3_slot: None,
        base5_slot: None,
    };
    if !feasible {
        return out;
    }
    for &base in bases {
        let b = base.value();
        let offset = (x_lo - q_start) * b as f64;
        let j = (libm::floor(offset).max(0.0) as u64).min(b - 1);
        let slot_end = q_start + (j + 1) as f64 / b as f64;
        if x_hi <= slot_end {
            match base {
                ReferenceBase::Three => out.base3_slot = Some(j),
                ReferenceBase::Five => out.base5_slot = Some(j),
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use core::f64::consts::{FRAC_PI_4, PI};

    fn depth_for(big_k: u64) -> GroverDepth {
        GroverDepth::from_oracle_factor(big_k).unwrap()
    }

    #[test]
    fn amplitude_angle_boundaries() {
        assert_eq!(
            amplitude_to_angle(Amplitude::new(0.0).unwrap()).radians(),
            0.0
        );
        assert!(
            (amplitude_to_angle(Amplitude::new(1.0).unwrap()).radians() - FRAC_PI_2).abs() < 1e-15
        );
        assert!(
            (amplitude_to_angle(Amplitude::new(0.5).unwrap()).radians() - FRAC_PI_4).abs() < 1e-15
        );
    }

    #[test]
    fn amplitude_domain_is_clamped_within_tolerance() {
        assert_eq!(Amplitude::new(1.0 + 5e-13).unwrap().value(), 1.0);
        assert_eq!(Amplitude::new(-5e-13).unwrap().value(), 0.0);
        assert!(matches!(
            Amplitude::new(1.0 + 1e-9),
            Err(Error::Domain { .. })
        ));
        assert!(Amplitude::new(f64::NAN).is_err());
    }

    #[test]
    fn amplified_probability_examples() {
        let p = amplified_probability(Angle::new(PI / 6.0).unwrap(), GroverDepth::new(1));
        assert!((p - 1.0).abs() < 1e-12);
        let p = amplified_probability(Angle::new(FRAC_PI_4).unwrap(), GroverDepth::ZERO);
        assert!((p - 0.5).abs() < 1e-12);
        let p = amplified_probability(Angle::new(0.4).unwrap(), GroverDepth::new(2));
        assert!((p - 0.826822).abs() < 1e-6);
    }

    #[test]
    fn quadrant_index_examples() {
        let q = |theta: f64, big_k| {
            quadrant_index(Angle::new(theta).unwrap(), depth_for(big_k)).value()
        };
        assert_eq!(q(0.1, 1), 0);
        assert_eq!(q(FRAC_PI_4, 3), 1);
        assert_eq!(q(0.2 * PI, 9), 3);
        // π/2 at K=1 is an exact boundary: lower quadrant
        assert_eq!(q(FRAC_PI_2, 1), 0);
        assert_eq!(q(FRAC_PI_2, 7), 6);
        assert_eq!(q(0.0, 5), 0);
    }

    #[test]
    fn oracle_factor_must_be_odd() {
        assert!(matches!(
            GroverDepth::from_oracle_factor(4),
            Err(Error::EvenOracleFactor(4))
        ));
        assert_eq!(GroverDepth::from_oracle_factor(9).unwrap().k(), 4);
    }

    #[test]
    fn invert_examples() {
        let x = 0.3;
        let t = invert_amplified(
            ProbInterval::point(x).unwrap(),
            GroverDepth::ZERO,
            QuadrantIndex::ZERO,
        )
        .unwrap();
        assert_eq!(
            t.lo,
            amplitude_to_angle(Amplitude::new(x).unwrap()).radians()
        );
        assert_eq!(t.lo, t.hi);

        let d5 = depth_for(5);
        let s = libm::sin(1.5);
        let t = invert_amplified(
            ProbInterval::point(s * s).unwrap(),
            d5,
            QuadrantIndex::new(0, d5).unwrap(),
        )
        .unwrap();
        assert!((t.lo - 0.3).abs() < 1e-12);

        let s = libm::sin(2.0);
        let t = invert_amplified(
            ProbInterval::point(s * s).unwrap(),
            d5,
            QuadrantIndex::new(1, d5).unwrap(),
        )
        .unwrap();
        assert!((t.lo - 0.4).abs() < 1e-12);
    }

    #[test]
    fn invert_rejects_out_of_range_quadrant() {
        assert!(QuadrantIndex::new(5, depth_for(5)).is_err());
        let err = branch_angle(0.5, depth_for(3), QuadrantIndex(3)).unwrap_err();
        assert!(matches!(err, Error::QuadrantOutOfRange { l: 3, big_k: 3 }));
    }

    #[test]
    fn odd_branch_swaps_endpoints() {
        let d = depth_for(3);
        let t = invert_amplified(
            ProbInterval::new(0.2, 0.6).unwrap(),
            d,
            QuadrantIndex::new(1, d).unwrap(),
        )
        .unwrap();
        assert!(t.lo < t.hi);
        assert!(t.lo >= FRAC_PI_2 / 3.0 && t.hi <= PI / 3.0);
    }

    #[test]
    fn containment_examples() {
        let c = containment_check(ThetaInterval::new(0.30, 0.31).unwrap(), depth_for(5), &[]);
        assert!(c.feasible);
        assert_eq!(c.quadrant.value(), 0);

        let c = containment_check(ThetaInterval::new(0.30, 0.80).unwrap(), depth_for(3), &[]);
        assert!(!c.feasible);

        let theta = Angle::new(0.123).unwrap();
        for big_k in (1..200).step_by(2) {
            let c = containment_check(ThetaInterval::point(theta), depth_for(big_k), &[]);
            assert!(c.feasible);
        }
    }

    #[test]
    fn reference_slots() {
        // scaled to [0.10, 0.15] quadrants: base-3 slot 0 ([0, 1/3]), base-5 slot 0 ([0, 0.2])
        let d = depth_for(1);
        let to_theta = |x: f64| x * FRAC_PI_2;
        let c = containment_check(
            ThetaInterval::new(to_theta(0.10), to_theta(0.15)).unwrap(),
            d,
            &[ReferenceBase::Three, ReferenceBase::Five],
        );
        assert_eq!(c.base3_slot, Some(0));
        assert_eq!(c.base5_slot, Some(0));
        // [0.30, 0.36]: straddles base-3 boundary 1/3 but fits base-5 slot 1 ([0.2, 0.4])
        let c = containment_check(
            ThetaInterval::new(to_theta(0.30), to_theta(0.36)).unwrap(),
            d,
            &[ReferenceBase::Three, ReferenceBase::Five],
        );
        assert_eq!(c.base3_slot, None);
        assert_eq!(c.base5_slot, Some(1));
        // bases not requested stay None
        let c = containment_check(
            ThetaInterval::new(to_theta(0.10), to_theta(0.15)).unwrap(),
            d,
            &[ReferenceBase::Five],
        );
        assert_eq!(c.base3_slot, None);
    }
}
