//! Synthetic orbital populations.
//!
//! Generates catalogs whose marginal element distributions resemble the
//! tracked-object environment: dense low-altitude shells at the usual
//! inclination families, thin navigation and geostationary rings, and a
//! tail of highly eccentric transfer and communications orbits spanning
//! many altitude bands. Used where a real catalog snapshot is not
//! available (offline tests, demos, load generation).

use std::f64::consts::TAU;

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, Normal};

use super::{eccentric_to_true, solve_kepler, CatalogObject};
use crate::dynamics::OrbitalElements;
use crate::ObjectId;

const EARTH_RADIUS_M: f64 = 6.371e6;

fn normal(rng: &mut ChaCha8Rng, mean: f64, sd: f64) -> f64 {
    Normal::new(mean, sd).expect("finite parameters").sample(rng)
}

fn clamp(v: f64, lo: f64, hi: f64) -> f64 {
    v.max(lo).min(hi)
}

/// Inclination in radians drawn from the main population families.
fn sample_inclination(rng: &mut ChaCha8Rng) -> f64 {
    let roll: f64 = rng.gen();
    let deg = if roll < 0.30 {
        normal(rng, 97.9, 0.9) // sun-synchronous
    } else if roll < 0.44 {
        normal(rng, 82.5, 1.0)
    } else if roll < 0.52 {
        normal(rng, 74.0, 0.8)
    } else if roll < 0.72 {
        normal(rng, 53.0, 1.5)
    } else if roll < 0.78 {
        normal(rng, 65.0, 1.0)
    } else if roll < 0.84 {
        normal(rng, 28.5, 1.0)
    } else {
        rng.gen_range(0.0..110.0)
    };
    clamp(deg, 0.0, 144.0).to_radians()
}

fn sample_leo(rng: &mut ChaCha8Rng) -> (f64, f64, f64) {
    let roll: f64 = rng.gen();
    let alt = if roll < 0.28 {
        normal(rng, 520e3, 70e3)
    } else if roll < 0.65 {
        normal(rng, 800e3, 120e3)
    } else if roll < 0.82 {
        normal(rng, 1_000e3, 120e3)
    } else {
        normal(rng, 1_450e3, 130e3)
    };
    let alt = clamp(alt, 300e3, 2_000e3);
    let a = EARTH_RADIUS_M + alt;
    // Mostly near-circular, with a debris tail of moderate eccentricity.
    let e = if rng.gen::<f64>() < 0.80 {
        normal(rng, 0.0, 0.008).abs()
    } else {
        rng.gen_range(0.005..0.09)
    };
    (a, clamp(e, 0.0, max_ecc_for(a)), sample_inclination(rng))
}

fn sample_meo(rng: &mut ChaCha8Rng) -> (f64, f64, f64) {
    let a = clamp(normal(rng, 26_560e3, 400e3), 20_000e3, 30_000e3);
    let e = clamp(normal(rng, 0.0, 0.004).abs(), 0.0, 0.02);
    let i = clamp(normal(rng, 55.5, 2.0), 45.0, 66.0).to_radians();
    (a, e, i)
}

fn sample_geo(rng: &mut ChaCha8Rng) -> (f64, f64, f64) {
    let a = clamp(normal(rng, 42_164e3, 80e3), 41_500e3, 43_000e3);
    let e = clamp(normal(rng, 0.0, 0.0008).abs(), 0.0, 0.01);
    let i = clamp(normal(rng, 0.0, 6.0).abs(), 0.0, 15.0).to_radians();
    (a, e, i)
}

fn sample_gto(rng: &mut ChaCha8Rng) -> (f64, f64, f64) {
    let perigee = EARTH_RADIUS_M + rng.gen_range(200e3..700e3);
    let apogee = clamp(normal(rng, 42_164e3, 2_500e3), perigee + 3_000e3, 50_000e3);
    let a = 0.5 * (perigee + apogee);
    let e = (apogee - perigee) / (apogee + perigee);
    let i = clamp(normal(rng, 20.0, 7.0).abs(), 0.0, 40.0).to_radians();
    (a, e, i)
}

fn sample_molniya(rng: &mut ChaCha8Rng) -> (f64, f64, f64) {
    let a = clamp(normal(rng, 26_555e3, 200e3), 25_500e3, 27_500e3);
    let e = clamp(normal(rng, 0.71, 0.02), 0.6, max_ecc_for(a));
    let i = clamp(normal(rng, 63.4, 0.4), 62.0, 65.0).to_radians();
    (a, e, i)
}

/// Largest eccentricity keeping the perigee 150 km above the surface.
fn max_ecc_for(a: f64) -> f64 {
    (1.0 - (EARTH_RADIUS_M + 150e3) / a).max(0.0)
}

/// Draw `n` objects with sequential ids and a uniform radius.
/// Deterministic for a given seed.
pub fn sample_population(n: usize, seed: u64, radius_m: f64) -> Vec<CatalogObject> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = Vec::with_capacity(n);
    for k in 0..n {
        let class: f64 = rng.gen();
        let (a, e, i) = if class < 0.74 {
            sample_leo(&mut rng)
        } else if class < 0.80 {
            sample_meo(&mut rng)
        } else if class < 0.88 {
            sample_geo(&mut rng)
        } else if class < 0.95 {
            sample_gto(&mut rng)
        } else {
            sample_molniya(&mut rng)
        };
        let raan = rng.gen_range(0.0..TAU);
        let argp = rng.gen_range(0.0..TAU);
        let mean_anomaly = rng.gen_range(0.0..TAU);
        let ecc_anomaly =
            solve_kepler(mean_anomaly, e).expect("sampled eccentricities converge");
        let nu = eccentric_to_true(ecc_anomaly, e);
        let elements = OrbitalElements::new(a, e, i, raan, argp, nu)
            .expect("sampled elements are valid");
        out.push(CatalogObject {
            id: ObjectId(k as u32 + 1),
            elements,
            radius_m,
        });
    }
    out
}
