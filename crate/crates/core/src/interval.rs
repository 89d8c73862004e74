//! Closed-interval arithmetic over `f64`.
//!
//! Every operation returns a superset of the exact real result: endpoints
//! are computed in round-to-nearest and then widened outward by one unit
//! in the last place. This keeps containment without touching the FPU
//! rounding mode, at the cost of results being up to one ulp loose per
//! operation. The operation set is intentionally small — just what the
//! orbital-element-to-position transform needs.

use std::f64::consts::{FRAC_PI_2, TAU};
use std::ops::{Add, Mul, Neg, Sub};

use thiserror::Error;

#[derive(Debug, Error, PartialEq)]
pub enum IntervalError {
    #[error("division by an interval containing zero: [{0}, {1}]")]
    DivisionByIntervalContainingZero(f64, f64),
}

/// A closed interval `[lo, hi]` with `lo <= hi`. A degenerate interval
/// (`lo == hi`) represents a single value.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Interval {
    lo: f64,
    hi: f64,
}

impl Interval {
    /// Panics if `lo > hi` or either endpoint is NaN.
    pub fn new(lo: f64, hi: f64) -> Self {
        assert!(!lo.is_nan() && !hi.is_nan(), "interval endpoint is NaN");
        assert!(lo <= hi, "inverted interval [{lo}, {hi}]");
        Self { lo, hi }
    }

    /// The degenerate interval `[x, x]`.
    pub fn point(x: f64) -> Self {
        Self::new(x, x)
    }

    pub fn lo(self) -> f64 {
        self.lo
    }

    pub fn hi(self) -> f64 {
        self.hi
    }

    pub fn width(self) -> f64 {
        self.hi - self.lo
    }

    pub fn contains(self, x: f64) -> bool {
        self.lo <= x && x <= self.hi
    }

    pub fn contains_interval(self, other: Interval) -> bool {
        self.lo <= other.lo && other.hi <= self.hi
    }

    pub fn overlaps(self, other: Interval) -> bool {
        self.lo <= other.hi && other.lo <= self.hi
    }

    /// Smallest interval containing both inputs.
    pub fn hull(self, other: Interval) -> Self {
        Self {
            lo: self.lo.min(other.lo),
            hi: self.hi.max(other.hi),
        }
    }

    /// One-ulp outward widening; applied to every arithmetic result.
    fn widened(lo: f64, hi: f64) -> Self {
        Self::new(lo.next_down(), hi.next_up())
    }

    /// Containment-correct quotient. Fails if the divisor spans zero.
    #[allow(clippy::should_implement_trait)] // fallible, so not `std::ops::Div`
    pub fn div(self, rhs: Interval) -> Result<Interval, IntervalError> {
        if rhs.lo <= 0.0 && 0.0 <= rhs.hi {
            return Err(IntervalError::DivisionByIntervalContainingZero(
                rhs.lo, rhs.hi,
            ));
        }
        // Reciprocal endpoints swap order; widen, then multiply.
        let recip = Self::widened(1.0 / rhs.hi, 1.0 / rhs.lo);
        Ok(self * recip)
    }

    /// Tightest-up-to-rounding enclosure of `{sin x : x in self}`.
    ///
    /// Endpoint evaluation, plus `±1` whenever a critical point of sine
    /// lies inside the interval. Intervals at least one period wide
    /// short-circuit to `[-1, 1]`.
    pub fn sin(self) -> Self {
        if self.width() >= TAU || !self.width().is_finite() {
            return Self::new(-1.0, 1.0);
        }
        let (slo, shi) = (self.lo.sin(), self.hi.sin());
        let mut lo = slo.min(shi);
        let mut hi = slo.max(shi);
        // Maxima at pi/2 + 2k*pi, minima at -pi/2 + 2k*pi.
        if self.contains_shifted_multiple(FRAC_PI_2) {
            hi = 1.0;
        }
        if self.contains_shifted_multiple(-FRAC_PI_2) {
            lo = -1.0;
        }
        let w = Self::widened(lo, hi);
        Self::new(w.lo.max(-1.0), w.hi.min(1.0))
    }

    /// Enclosure of `{cos x : x in self}`; see [`Interval::sin`].
    pub fn cos(self) -> Self {
        if self.width() >= TAU || !self.width().is_finite() {
            return Self::new(-1.0, 1.0);
        }
        let (clo, chi) = (self.lo.cos(), self.hi.cos());
        let mut lo = clo.min(chi);
        let mut hi = clo.max(chi);
        // Maxima at 2k*pi, minima at pi + 2k*pi.
        if self.contains_shifted_multiple(0.0) {
            hi = 1.0;
        }
        if self.contains_shifted_multiple(std::f64::consts::PI) {
            lo = -1.0;
        }
        let w = Self::widened(lo, hi);
        Self::new(w.lo.max(-1.0), w.hi.min(1.0))
    }

    /// True when `offset + 2k*pi` lies in the interval for some integer k.
    /// The argument is range-reduced by whole periods, so this stays exact
    /// enough for the accumulated (unwrapped) angles the dynamics produce.
    fn contains_shifted_multiple(self, offset: f64) -> bool {
        let k = ((self.lo - offset) / TAU).ceil();
        let candidate = offset + k * TAU;
        candidate <= self.hi
    }
}

impl Add for Interval {
    type Output = Interval;
    fn add(self, rhs: Interval) -> Interval {
        Self::widened(self.lo + rhs.lo, self.hi + rhs.hi)
    }
}

impl Sub for Interval {
    type Output = Interval;
    fn sub(self, rhs: Interval) -> Interval {
        Self::widened(self.lo - rhs.hi, self.hi - rhs.lo)
    }
}

impl Neg for Interval {
    type Output = Interval;
    fn neg(self) -> Interval {
        // Negation is exact; no widening needed.
        Interval::new(-self.hi, -self.lo)
    }
}

impl Mul for Interval {
    type Output = Interval;
    fn mul(self, rhs: Interval) -> Interval {
        let p = [
            self.lo * rhs.lo,
            self.lo * rhs.hi,
            self.hi * rhs.lo,
            self.hi * rhs.hi,
        ];
        let lo = p.iter().copied().fold(f64::INFINITY, f64::min);
        let hi = p.iter().copied().fold(f64::NEG_INFINITY, f64::max);
        Self::widened(lo, hi)
    }
}
