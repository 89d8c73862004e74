//! Motion models: Kepler two-body propagation and straight-line motion.
//!
//! Kepler motion is driven by the true-anomaly rate equation
//! `d(nu)/dt = sqrt(mu / (a(1-e^2))^3) * (1 + e cos nu)^2`, integrated
//! with fixed-step RK4 on the engine's own time grid so that grid steps
//! index integration steps directly. Since the rate is strictly positive
//! for elliptical orbits, the anomaly at the two ends of a time interval
//! brackets it over the whole interval; evaluating the element-to-ECI
//! transform in interval arithmetic over that bracket yields a position
//! box for the interval in O(1) once the endpoint anomalies are known.
//!
//! Anomalies accumulate without wrapping — monotonicity is what makes the
//! endpoint bracketing valid — and the interval trig handles arbitrary
//! angle ranges.

use std::collections::BTreeMap;

use crate::engine::Dynamics;
use crate::geometry::{Box3, Vec3};
use crate::interval::Interval;

/// Geocentric gravitational parameter, m^3/s^2 (WGS-84 value).
pub const EARTH_MU: f64 = 3.986004418e14;

/// Gravitational parameter of the central body.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GravParam(pub f64);

impl Default for GravParam {
    fn default() -> Self {
        Self(EARTH_MU)
    }
}

/// The six classical orbital elements at epoch `t = 0`.
///
/// Only closed (elliptical) orbits are representable: `0 <= e < 1`, with
/// eccentricity capped at `0.9999999` (the densest value a catalog field
/// can carry) to keep the radius denominator `1 + e cos nu` bounded away
/// from zero.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OrbitalElements {
    /// Semi-major axis, meters.
    pub semi_major_axis_m: f64,
    /// Eccentricity, dimensionless.
    pub eccentricity: f64,
    /// Inclination, radians.
    pub inclination_rad: f64,
    /// Right ascension of the ascending node, radians.
    pub raan_rad: f64,
    /// Argument of perigee, radians.
    pub arg_perigee_rad: f64,
    /// True anomaly at epoch, radians.
    pub true_anomaly_rad: f64,
}

pub const MAX_ECCENTRICITY: f64 = 0.999_999_9;

impl OrbitalElements {
    pub fn new(
        semi_major_axis_m: f64,
        eccentricity: f64,
        inclination_rad: f64,
        raan_rad: f64,
        arg_perigee_rad: f64,
        true_anomaly_rad: f64,
    ) -> Result<Self, String> {
        if !(semi_major_axis_m > 0.0 && semi_major_axis_m.is_finite()) {
            return Err(format!("semi-major axis must be positive, got {semi_major_axis_m}"));
        }
        if !(0.0..=MAX_ECCENTRICITY).contains(&eccentricity) {
            return Err(format!(
                "eccentricity must be in [0, {MAX_ECCENTRICITY}] (closed orbit), got {eccentricity}"
            ));
        }
        for (name, v) in [
            ("inclination", inclination_rad),
            ("raan", raan_rad),
            ("argument of perigee", arg_perigee_rad),
            ("true anomaly", true_anomaly_rad),
        ] {
            if !v.is_finite() {
                return Err(format!("{name} must be finite, got {v}"));
            }
        }
        Ok(Self {
            semi_major_axis_m,
            eccentricity,
            inclination_rad,
            raan_rad,
            arg_perigee_rad,
            true_anomaly_rad,
        })
    }

    /// Perigee radius `a(1-e)`, meters from the focus.
    pub fn perigee_m(&self) -> f64 {
        self.semi_major_axis_m * (1.0 - self.eccentricity)
    }

    /// Apogee radius `a(1+e)`, meters from the focus.
    pub fn apogee_m(&self) -> f64 {
        self.semi_major_axis_m * (1.0 + self.eccentricity)
    }
}

/// Orbital period `2 pi sqrt(a^3 / mu)`, seconds.
pub fn orbital_period_s(el: &OrbitalElements, mu: GravParam) -> f64 {
    let a = el.semi_major_axis_m;
    std::f64::consts::TAU * (a * a * a / mu.0).sqrt()
}

/// True-anomaly rate `sqrt(mu / (a(1-e^2))^3) (1 + e cos nu)^2`.
/// Strictly positive for every elliptical orbit.
pub fn nu_dot(nu: f64, el: &OrbitalElements, mu: GravParam) -> f64 {
    let p = el.semi_major_axis_m * (1.0 - el.eccentricity * el.eccentricity);
    let coef = (mu.0 / (p * p * p)).sqrt();
    let s = 1.0 + el.eccentricity * nu.cos();
    coef * s * s
}

/// Anchor states retained while marching, one per this many anchor steps.
const ANCHOR_CHECKPOINT: u64 = 64;

/// Divisor of the (perigee-weighted) orbital period that caps the
/// internal integration step.
const ACCURACY_DIVISOR: f64 = 8192.0;

/// Incrementally-built table of true anomaly over the engine time grid.
///
/// The anomaly is strictly increasing in time, so the table is monotone;
/// lookups extend it on demand and results are memoized, making repeated
/// endpoint lookups cheap regardless of how far apart they are.
///
/// Integration marches on an internal grid of step `step_s * 2^k`, with
/// `k` chosen so the internal step stays below an accuracy bound of
/// `period * (1-e)^1.5 / 8192` (the perigee passage sets the fastest
/// dynamics). When the engine step is already at or above that bound,
/// `k = 0` and integration lands exactly on the engine grid. Queried
/// engine steps between anchors are reached by a single partial step, so
/// a lookup is O(1) beyond the shared forward march no matter how small
/// the engine step is.
#[derive(Debug, Clone)]
pub struct KeplerPropagator {
    elements: OrbitalElements,
    step_s: f64,
    rate_coef: f64,
    /// Engine steps per internal integration step; a power of two.
    stride: u64,
    /// `step_s * stride`.
    anchor_h_s: f64,
    /// Anchor index (engine step / stride) -> anomaly.
    anchors: BTreeMap<u64, f64>,
    /// Engine step -> anomaly, for every step ever queried.
    table: BTreeMap<u64, f64>,
}

impl KeplerPropagator {
    pub fn new(elements: OrbitalElements, mu: GravParam, step_s: f64) -> Self {
        assert!(step_s > 0.0 && step_s.is_finite(), "bad step {step_s}");
        let p = elements.semi_major_axis_m * (1.0 - elements.eccentricity * elements.eccentricity);
        let rate_coef = (mu.0 / (p * p * p)).sqrt();
        let period = orbital_period_s(&elements, mu);
        let h_cap = period * (1.0 - elements.eccentricity).powf(1.5) / ACCURACY_DIVISOR;
        let mut stride = 1u64;
        while stride < (1 << 24) && step_s * (stride * 2) as f64 <= h_cap {
            stride *= 2;
        }
        let mut anchors = BTreeMap::new();
        anchors.insert(0, elements.true_anomaly_rad);
        let mut table = BTreeMap::new();
        table.insert(0, elements.true_anomaly_rad);
        Self {
            elements,
            step_s,
            rate_coef,
            stride,
            anchor_h_s: step_s * stride as f64,
            anchors,
            table,
        }
    }

    pub fn elements(&self) -> &OrbitalElements {
        &self.elements
    }

    pub fn step_s(&self) -> f64 {
        self.step_s
    }

    fn rate(&self, nu: f64) -> f64 {
        let s = 1.0 + self.elements.eccentricity * nu.cos();
        self.rate_coef * s * s
    }

    /// One classical RK4 step of size `h` from `nu`.
    fn rk4(&self, nu: f64, h: f64) -> f64 {
        let k1 = self.rate(nu);
        let k2 = self.rate(nu + 0.5 * h * k1);
        let k3 = self.rate(nu + 0.5 * h * k2);
        let k4 = self.rate(nu + h * k3);
        nu + h / 6.0 * (k1 + 2.0 * k2 + 2.0 * k3 + k4)
    }

    /// Anomaly at an internal anchor, marching forward from the nearest
    /// retained anchor. One anchor step at a time, so the value at an
    /// anchor never depends on the order of requests.
    fn nu_at_anchor(&mut self, anchor: u64) -> f64 {
        if let Some(&nu) = self.anchors.get(&anchor) {
            return nu;
        }
        let (&start, &start_nu) = self
            .anchors
            .range(..=anchor)
            .next_back()
            .expect("anchor 0 is always seeded");
        let mut a = start;
        let mut nu = start_nu;
        while a < anchor {
            nu = self.rk4(nu, self.anchor_h_s);
            a += 1;
            if a % ANCHOR_CHECKPOINT == 0 {
                self.anchors.insert(a, nu);
            }
        }
        self.anchors.insert(anchor, nu);
        nu
    }

    /// True anomaly at a grid step, unwrapped (accumulates past 2 pi).
    pub fn nu_at_step(&mut self, step: u64) -> f64 {
        if let Some(&nu) = self.table.get(&step) {
            return nu;
        }
        let base = self.nu_at_anchor(step / self.stride);
        let offset_steps = step % self.stride;
        let nu = if offset_steps == 0 {
            base
        } else {
            self.rk4(base, offset_steps as f64 * self.step_s)
        };
        self.table.insert(step, nu);
        nu
    }

    /// True anomaly at an arbitrary nonnegative time: whole grid steps
    /// followed by one partial RK4 step.
    pub fn nu_at_time(&mut self, t_s: f64) -> f64 {
        assert!(t_s >= 0.0 && t_s.is_finite());
        let whole = (t_s / self.step_s).floor();
        let step = whole as u64;
        let nu = self.nu_at_step(step);
        let rem = t_s - whole * self.step_s;
        if rem > 0.0 {
            self.rk4(nu, rem)
        } else {
            nu
        }
    }
}

/// Precomputed rotation constants for one set of elements, shared by the
/// scalar and interval evaluations so the interval box always brackets
/// the scalar positions.
#[derive(Debug, Clone, Copy)]
struct EciFrame {
    semi_latus: f64,
    ecc: f64,
    argp: f64,
    cos_raan: f64,
    sin_raan: f64,
    sin_inc: f64,
    /// `sin(raan) * cos(inc)`
    b1: f64,
    /// `cos(raan) * cos(inc)`
    b2: f64,
}

impl EciFrame {
    fn new(el: &OrbitalElements) -> Self {
        let (cos_inc, sin_inc) = (el.inclination_rad.cos(), el.inclination_rad.sin());
        let (cos_raan, sin_raan) = (el.raan_rad.cos(), el.raan_rad.sin());
        Self {
            semi_latus: el.semi_major_axis_m * (1.0 - el.eccentricity * el.eccentricity),
            ecc: el.eccentricity,
            argp: el.arg_perigee_rad,
            cos_raan,
            sin_raan,
            sin_inc,
            b1: sin_raan * cos_inc,
            b2: cos_raan * cos_inc,
        }
    }

    fn position(&self, nu: f64) -> Vec3 {
        let rho = self.semi_latus / (1.0 + self.ecc * nu.cos());
        let u = self.argp + nu;
        let (cu, su) = (u.cos(), u.sin());
        [
            rho * (self.cos_raan * cu - self.b1 * su),
            rho * (self.sin_raan * cu + self.b2 * su),
            rho * (self.sin_inc * su),
        ]
    }

    fn position_box(&self, nu: Interval) -> Box3 {
        let pt = Interval::point;
        let denom = pt(1.0) + pt(self.ecc) * nu.cos();
        // cos is clamped to [-1, 1], so the denominator stays >= 1 - e > 0.
        let rho = pt(self.semi_latus)
            .div(denom)
            .expect("eccentricity < 1 keeps the radius denominator positive");
        let u = pt(self.argp) + nu;
        let (cu, su) = (u.cos(), u.sin());
        let x = rho * (pt(self.cos_raan) * cu - pt(self.b1) * su);
        let y = rho * (pt(self.sin_raan) * cu + pt(self.b2) * su);
        let z = rho * (pt(self.sin_inc) * su);
        Box3::from_coords(x, y, z)
    }
}

/// Position in the Earth-centered inertial frame for a given true anomaly:
/// the perifocal point at radius `a(1-e^2)/(1+e cos nu)` rotated by
/// argument of perigee, inclination, and right ascension.
pub fn elements_to_eci(el: &OrbitalElements, nu: f64) -> Vec3 {
    EciFrame::new(el).position(nu)
}

/// Interval counterpart of [`elements_to_eci`]: a box containing the ECI
/// position for every true anomaly in `nu`.
pub fn elements_to_eci_box(el: &OrbitalElements, nu: Interval) -> Box3 {
    EciFrame::new(el).position_box(nu)
}

/// Kepler motion as seen by the engine.
#[derive(Debug, Clone)]
pub struct KeplerDynamics {
    prop: KeplerPropagator,
    frame: EciFrame,
}

impl KeplerDynamics {
    pub fn new(elements: OrbitalElements, mu: GravParam, step_s: f64) -> Self {
        let frame = EciFrame::new(&elements);
        Self {
            prop: KeplerPropagator::new(elements, mu, step_s),
            frame,
        }
    }

    pub fn elements(&self) -> &OrbitalElements {
        self.prop.elements()
    }
}

impl Dynamics for KeplerDynamics {
    fn step_seconds(&self) -> f64 {
        self.prop.step_s()
    }

    fn position(&mut self, step: u64) -> Vec3 {
        let nu = self.prop.nu_at_step(step);
        self.frame.position(nu)
    }

    fn position_box(&mut self, lo_step: u64, hi_step: u64) -> Box3 {
        debug_assert!(lo_step <= hi_step);
        if lo_step == hi_step {
            // Instant intervals reproduce the exact position.
            return Box3::point(self.position(lo_step));
        }
        let nu_lo = self.prop.nu_at_step(lo_step);
        let nu_hi = self.prop.nu_at_step(hi_step);
        self.frame.position_box(Interval::new(nu_lo, nu_hi))
    }

    fn radial_bounds(&self, _total_steps: u64) -> (f64, f64) {
        let el = self.prop.elements();
        (el.perigee_m(), el.apogee_m())
    }

    fn clone_dynamics(&self) -> Box<dyn Dynamics> {
        Box::new(self.clone())
    }
}

/// Straight-line motion `p(t) = p0 + t v`; the simplest dynamics, used as
/// a reference model in tests and mixed scenarios.
#[derive(Debug, Clone, Copy)]
pub struct LinearDynamics {
    p0: Vec3,
    vel: Vec3,
    step_s: f64,
}

impl LinearDynamics {
    pub fn new(p0: Vec3, vel: Vec3, step_s: f64) -> Self {
        assert!(step_s > 0.0 && step_s.is_finite());
        Self { p0, vel, step_s }
    }

    fn at(&self, t_s: f64) -> Vec3 {
        [
            self.p0[0] + t_s * self.vel[0],
            self.p0[1] + t_s * self.vel[1],
            self.p0[2] + t_s * self.vel[2],
        ]
    }
}

impl Dynamics for LinearDynamics {
    fn step_seconds(&self) -> f64 {
        self.step_s
    }

    fn position(&mut self, step: u64) -> Vec3 {
        self.at(step as f64 * self.step_s)
    }

    fn position_box(&mut self, lo_step: u64, hi_step: u64) -> Box3 {
        // Each coordinate is linear in time: endpoints bound the interval.
        let a = self.at(lo_step as f64 * self.step_s);
        let b = self.at(hi_step as f64 * self.step_s);
        Box3::point(a).union(&Box3::point(b))
    }

    fn radial_bounds(&self, total_steps: u64) -> (f64, f64) {
        let horizon = total_steps as f64 * self.step_s;
        let norm = |p: Vec3| (p[0] * p[0] + p[1] * p[1] + p[2] * p[2]).sqrt();
        let d0 = norm(self.at(0.0));
        let d1 = norm(self.at(horizon));
        let mut lo = d0.min(d1);
        let hi = d0.max(d1);
        // The squared distance is a convex quadratic; check its vertex.
        let vv = self.vel[0] * self.vel[0] + self.vel[1] * self.vel[1] + self.vel[2] * self.vel[2];
        if vv > 0.0 {
            let t_star = -(self.p0[0] * self.vel[0]
                + self.p0[1] * self.vel[1]
                + self.p0[2] * self.vel[2])
                / vv;
            if (0.0..=horizon).contains(&t_star) {
                lo = lo.min(norm(self.at(t_star)));
            }
        }
        (lo, hi)
    }

    fn clone_dynamics(&self) -> Box<dyn Dynamics> {
        Box::new(*self)
    }
}
