//! Restriction operators that force a variated gene value back into its
//! allowed interval.
//!
//! Three strategies are provided:
//!
//! * [`RestrictionStrategy::Clamped`] saturates at the violated bound.
//! * [`RestrictionStrategy::BounceBackIterative`] mirrors the overshoot back
//!   inside the interval, repeating the reflection until the value lands in
//!   bounds.
//! * [`RestrictionStrategy::BounceBackClampedDiff`] mirrors once, but first
//!   clamps the overshoot to the interval width so a single reflection always
//!   suffices.
//!
//! A single reflection ([`bounce_back_once`]) is exposed on its own because it
//! can leave the interval when the overshoot exceeds the interval width.
//!
//! All intervals are closed: values exactly at `min` or `max` are in bounds
//! and pass through every operator unchanged.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Reflection budget for [`bounce_back_iterative`] once the value is within
/// one period of the interval.
pub const MAX_REFLECTIONS: usize = 64;

/// Closed interval `[min, max]` with `min < max`, both finite.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Bounds {
    min: f64,
    max: f64,
}

impl Bounds {
    /// The genotype interval `[0, 1]`.
    pub const UNIT: Bounds = Bounds { min: 0.0, max: 1.0 };

    pub fn new(min: f64, max: f64) -> Result<Self> {
        if !(min.is_finite() && max.is_finite() && min < max && (max - min).is_finite()) {
            return Err(Error::InvalidBounds { min, max });
        }
        Ok(Bounds { min, max })
    }

    /// Interval `[-half_width, half_width]`.
    pub fn symmetric(half_width: f64) -> Result<Self> {
        Bounds::new(-half_width, half_width)
    }

    #[inline]
    pub fn min(&self) -> f64 {
        self.min
    }

    #[inline]
    pub fn max(&self) -> f64 {
        self.max
    }

    /// Interval width `max - min`.
    #[inline]
    pub fn width(&self) -> f64 {
        self.max - self.min
    }

    #[inline]
    pub fn contains(&self, v: f64) -> bool {
        self.min <= v && v <= self.max
    }
}

impl fmt::Display for Bounds {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}, {}]", self.min, self.max)
    }
}

/// How out-of-bounds values are brought back into their interval.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
pub enum RestrictionStrategy {
    /// Saturate at the violated bound.
    #[serde(rename = "clamped")]
    Clamped,
    /// Reflect the overshoot, repeating until in bounds.
    #[default]
    #[serde(rename = "bounce-iter")]
    BounceBackIterative,
    /// Reflect once with the overshoot clamped to the interval width.
    #[serde(rename = "bounce-clamped")]
    BounceBackClampedDiff,
}

impl RestrictionStrategy {
    pub const ALL: [RestrictionStrategy; 3] = [
        RestrictionStrategy::Clamped,
        RestrictionStrategy::BounceBackIterative,
        RestrictionStrategy::BounceBackClampedDiff,
    ];

    /// Short name used on the command line and in output files.
    pub fn name(self) -> &'static str {
        match self {
            RestrictionStrategy::Clamped => "clamped",
            RestrictionStrategy::BounceBackIterative => "bounce-iter",
            RestrictionStrategy::BounceBackClampedDiff => "bounce-clamped",
        }
    }

    pub fn is_bounce_back(self) -> bool {
        !matches!(self, RestrictionStrategy::Clamped)
    }
}

impl fmt::Display for RestrictionStrategy {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for RestrictionStrategy {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        RestrictionStrategy::ALL
            .into_iter()
            .find(|strategy| strategy.name() == s)
            .ok_or_else(|| {
                Error::InvalidConfig(format!(
                    "unknown restriction strategy {s:?} (expected clamped, bounce-iter or bounce-clamped)"
                ))
            })
    }
}

#[inline]
fn check_finite(v: f64) -> Result<f64> {
    if v.is_finite() {
        Ok(v)
    } else {
        Err(Error::NonFinite(v))
    }
}

/// Saturate `v` at the violated bound.
pub fn clamp(v: f64, b: Bounds) -> Result<f64> {
    let v = check_finite(v)?;
    Ok(if v < b.min {
        b.min
    } else if v > b.max {
        b.max
    } else {
        v
    })
}

/// Reflect `v` once about the violated bound.
///
/// The result can still be out of bounds when the overshoot exceeds the
/// interval width.
pub fn bounce_back_once(v: f64, b: Bounds) -> Result<f64> {
    let v = check_finite(v)?;
    Ok(reflect(v, b))
}

#[inline]
fn reflect(v: f64, b: Bounds) -> f64 {
    if v < b.min {
        b.min + (b.min - v)
    } else if v > b.max {
        b.max - (v - b.max)
    } else {
        v
    }
}

/// Reflect `v` repeatedly until it lies within `b`.
///
/// Values more than one full period (twice the width) away from the interval
/// are first folded by whole periods, which is equivalent to an even number
/// of reflections; the remaining reflections are applied one at a time.
pub fn bounce_back_iterative(v: f64, b: Bounds) -> Result<f64> {
    let mut v = check_finite(v)?;
    if b.contains(v) {
        return Ok(v);
    }

    let period = 2.0 * b.width();
    if v < b.min - period || v > b.max + period {
        v = b.min + (v - b.min).rem_euclid(period);
        if !v.is_finite() {
            return Err(Error::NonFinite(v));
        }
    }

    for _ in 0..MAX_REFLECTIONS {
        if b.contains(v) {
            return Ok(v);
        }
        v = reflect(v, b);
    }
    if b.contains(v) {
        return Ok(v);
    }
    Err(Error::BounceBackDiverged {
        value: v,
        min: b.min,
        max: b.max,
        iterations: MAX_REFLECTIONS,
    })
}

/// Reflect `v` once, clamping the overshoot to the interval width first.
pub fn bounce_back_clamped_diff(v: f64, b: Bounds) -> Result<f64> {
    let v = check_finite(v)?;
    let width = b.width();
    let out = if v < b.min {
        b.min + (b.min - v).min(width)
    } else if v > b.max {
        b.max - (v - b.max).min(width)
    } else {
        return Ok(v);
    };
    // `max - width` can round a hair past `min` for asymmetric bounds.
    Ok(out.clamp(b.min, b.max))
}

/// Apply the selected restriction strategy.
pub fn restrict(v: f64, b: Bounds, strategy: RestrictionStrategy) -> Result<f64> {
    match strategy {
        RestrictionStrategy::Clamped => clamp(v, b),
        RestrictionStrategy::BounceBackIterative => bounce_back_iterative(v, b),
        RestrictionStrategy::BounceBackClampedDiff => bounce_back_clamped_diff(v, b),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn unit() -> Bounds {
        Bounds::UNIT
    }

    /// Straight repeated application of a single reflection, used as the
    /// oracle for the iterative variant.
    fn reflect_until_inside(mut v: f64, b: Bounds) -> f64 {
        while !b.contains(v) {
            v = bounce_back_once(v, b).unwrap();
        }
        v
    }

    #[test]
    fn bounds_reject_degenerate_and_non_finite() {
        assert!(Bounds::new(1.0, 1.0).is_err());
        assert!(Bounds::new(2.0, 1.0).is_err());
        assert!(Bounds::new(f64::NAN, 1.0).is_err());
        assert!(Bounds::new(0.0, f64::INFINITY).is_err());
        assert!(Bounds::new(-f64::MAX, f64::MAX).is_err());
        assert_eq!(Bounds::new(0.0, 1.0).unwrap(), Bounds::UNIT);
    }

    #[test]
    fn clamp_examples() {
        assert_eq!(clamp(1.5, unit()).unwrap(), 1.0);
        assert_eq!(clamp(0.5, unit()).unwrap(), 0.5);
        assert_eq!(clamp(-0.3, unit()).unwrap(), 0.0);
    }

    #[test]
    fn bounce_back_once_examples() {
        assert!((bounce_back_once(1.2, unit()).unwrap() - 0.8).abs() < 1e-12);
        assert_eq!(bounce_back_once(0.5, unit()).unwrap(), 0.5);
        // A single reflection can leave the interval.
        let once = bounce_back_once(2.3, unit()).unwrap();
        assert!((once - -0.3).abs() < 1e-12);
        assert!(!unit().contains(once));
    }

    #[test]
    fn bounce_back_iterative_examples() {
        let oracle = reflect_until_inside(2.3, unit());
        assert!((oracle - 0.3).abs() < 1e-12);
        assert_eq!(bounce_back_iterative(2.3, unit()).unwrap(), oracle);
        assert!((bounce_back_iterative(-0.3, unit()).unwrap() - 0.3).abs() < 1e-12);
        assert_eq!(bounce_back_iterative(0.0, unit()).unwrap(), 0.0);
        assert_eq!(bounce_back_iterative(1.0, unit()).unwrap(), 1.0);
    }

    #[test]
    fn bounce_back_iterative_matches_repeated_reflection_for_moderate_overshoot() {
        let b = Bounds::new(-5.12, 5.12).unwrap();
        for k in -400..=400 {
            let v = k as f64 * 0.173;
            let expected = reflect_until_inside(v, b);
            let got = bounce_back_iterative(v, b).unwrap();
            assert!((got - expected).abs() < 1e-9, "v={v}: {got} vs {expected}");
        }
    }

    #[test]
    fn bounce_back_iterative_terminates_for_huge_values() {
        for v in [1e6, -1e6, 1e300, -1e300, f64::MAX, f64::MIN] {
            let r = bounce_back_iterative(v, unit()).unwrap();
            assert!(unit().contains(r), "{v} -> {r}");
        }
    }

    #[test]
    fn bounce_back_clamped_diff_examples() {
        assert!((bounce_back_clamped_diff(1.2, unit()).unwrap() - 0.8).abs() < 1e-12);
        assert_eq!(bounce_back_clamped_diff(2.3, unit()).unwrap(), 0.0);
        assert_eq!(bounce_back_clamped_diff(-7.0, unit()).unwrap(), 1.0);
        assert_eq!(bounce_back_clamped_diff(0.7, unit()).unwrap(), 0.7);
    }

    #[test]
    fn restrict_dispatch() {
        use RestrictionStrategy::*;
        assert_eq!(restrict(1.5, unit(), Clamped).unwrap(), 1.0);
        assert!((restrict(1.2, unit(), BounceBackIterative).unwrap() - 0.8).abs() < 1e-12);
        for s in RestrictionStrategy::ALL {
            assert_eq!(restrict(0.4, unit(), s).unwrap(), 0.4);
        }
    }

    #[test]
    fn non_finite_inputs_are_errors() {
        for s in RestrictionStrategy::ALL {
            for v in [f64::NAN, f64::INFINITY, f64::NEG_INFINITY] {
                assert!(matches!(restrict(v, unit(), s), Err(Error::NonFinite(_))));
            }
        }
        assert!(bounce_back_once(f64::NAN, unit()).is_err());
    }

    #[test]
    fn strategy_names_round_trip() {
        for s in RestrictionStrategy::ALL {
            assert_eq!(s.name().parse::<RestrictionStrategy>().unwrap(), s);
        }
        assert!("wrap".parse::<RestrictionStrategy>().is_err());
        assert_eq!(
            RestrictionStrategy::default(),
            RestrictionStrategy::BounceBackIterative
        );
    }
}
