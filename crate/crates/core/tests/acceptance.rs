//! Acceptance suite: one test per shipping criterion, each printing a
//! PASS line with its measurements. Run with
//!
//!     cargo test -p orbitguard --test acceptance -- --nocapture
//!
//! Thresholds and tolerances are pinned in the asserts themselves.

use std::path::Path;
use std::time::Instant;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use orbitguard::dynamics::{
    elements_to_eci, orbital_period_s, GravParam, KeplerDynamics, KeplerPropagator,
    LinearDynamics, OrbitalElements,
};
use orbitguard::engine::{
    detect_4d, detect_4d_with, detect_basic_aabb, detect_brute, witness_is_exact, DetectOptions,
    EngineError, InjectedFault, ProblemInstance, WorldObject,
};
use orbitguard::ingest::{
    format_tle, parse_any_catalog, parse_tle, records_to_catalog, scale_catalog, solve_kepler,
    synth::sample_population, tle_to_elements, CatalogObject, IngestError,
};
use orbitguard::partition::{build_bands, detect_partitioned, edge_cover_check, radial_extents};
use orbitguard::ObjectId;

fn seed_catalog_path() -> std::path::PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("../../data/seed_catalog.tle")
}

/// The full-size catalog used by the smoke and partition criteria: the
/// bundled snapshot grown to the evaluation size with a fixed seed.
fn full_catalog() -> Vec<CatalogObject> {
    let text = std::fs::read_to_string(seed_catalog_path()).expect("bundled snapshot");
    let (objects, issues) = parse_any_catalog(&text, GravParam::default(), 0.01).unwrap();
    assert!(issues.is_empty(), "bundled snapshot must parse cleanly");
    scale_catalog(&objects, 16838, 42).unwrap()
}

fn kepler_instance_from(objects: &[CatalogObject], horizon_s: f64, step_s: f64) -> ProblemInstance {
    let world: Vec<WorldObject> = objects
        .iter()
        .map(|o| {
            WorldObject::new(
                o.id,
                o.radius_m,
                Box::new(KeplerDynamics::new(o.elements, GravParam::default(), step_s)),
            )
        })
        .collect();
    ProblemInstance::new(world, horizon_s, step_s).unwrap()
}

fn random_linear_instance(rng: &mut ChaCha8Rng) -> ProblemInstance {
    let n = rng.gen_range(2..=20);
    let step_s = 0.5;
    let steps = rng.gen_range(10..=50);
    let objects = (0..n)
        .map(|i| {
            WorldObject::new(
                ObjectId(i),
                rng.gen_range(0.2..2.5),
                Box::new(LinearDynamics::new(
                    [
                        rng.gen_range(-40.0..40.0),
                        rng.gen_range(-40.0..40.0),
                        rng.gen_range(-40.0..40.0),
                    ],
                    [
                        rng.gen_range(-4.0..4.0),
                        rng.gen_range(-4.0..4.0),
                        rng.gen_range(-4.0..4.0),
                    ],
                    step_s,
                )),
            )
        })
        .collect();
    ProblemInstance::new(objects, steps as f64 * step_s, step_s).unwrap()
}

fn random_kepler_instance(rng: &mut ChaCha8Rng) -> ProblemInstance {
    let n = rng.gen_range(2..=14);
    let step_s = 1.0;
    let steps = rng.gen_range(10..=50);
    let base_a = rng.gen_range(6.8e6..8.5e6);
    let objects = (0..n)
        .map(|i| {
            let el = OrbitalElements::new(
                base_a * rng.gen_range(0.999..1.001),
                rng.gen_range(0.0..0.02),
                rng.gen_range(0.8..1.1),
                rng.gen_range(0.0..0.01),
                0.0,
                rng.gen_range(0.0..0.002),
            )
            .unwrap();
            WorldObject::new(
                ObjectId(i),
                rng.gen_range(1.0e2..8.0e3),
                Box::new(KeplerDynamics::new(el, GravParam::default(), step_s)),
            )
        })
        .collect();
    ProblemInstance::new(objects, steps as f64 * step_s, step_s).unwrap()
}

fn random_instance(rng: &mut ChaCha8Rng, index: usize) -> ProblemInstance {
    if index % 5 < 3 {
        random_linear_instance(rng)
    } else {
        random_kepler_instance(rng)
    }
}

// Criterion 1: the three detectors and the partitioned detector agree on
// collision existence and first-collision time, exactly, over 10^3 random
// instances, within a five-minute budget.
#[test]
fn criterion_1_oracle_equivalence() {
    let started = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(0xacce9701);
    let opts = DetectOptions::default();
    let mut collisions = 0usize;
    for i in 0..1000 {
        let mut p = random_instance(&mut rng, i);
        let brute = detect_brute(&mut p);
        let basic = detect_basic_aabb(&mut p);
        let four_d = detect_4d(&mut p);
        assert_eq!(
            brute.map(|w| w.step),
            basic.map(|w| w.step),
            "instance {i}: per-step tree disagrees with exhaustive check"
        );
        assert_eq!(
            brute.map(|w| w.step),
            four_d.map(|w| w.step),
            "instance {i}: space-time tree disagrees with exhaustive check"
        );
        if let Some(w) = four_d {
            collisions += 1;
            assert!(witness_is_exact(&mut p, &w), "instance {i}: stale witness");
        }
        let extents = radial_extents(&p);
        for parts in [1usize, 2, 4] {
            let set = build_bands(&extents, parts);
            edge_cover_check(&extents, &set).unwrap();
            let report = detect_partitioned(&p, &set, &opts, 2).unwrap();
            assert_eq!(
                report.witness.map(|w| w.step),
                brute.map(|w| w.step),
                "instance {i}: partitioned run at p={parts} disagrees"
            );
        }
    }
    let elapsed = started.elapsed().as_secs_f64();
    assert!(collisions >= 100, "suite too easy: {collisions} collisions");
    assert!(elapsed < 300.0, "budget exceeded: {elapsed:.1} s");
    println!(
        "ACCEPTANCE 1: PASS — 1000 instances agree across all detectors and p in {{1,2,4}} \
         ({collisions} with collisions) in {elapsed:.1} s"
    );
}

// Criterion 2: with two collisions planted at steps k1 < k2, the
// space-time detector reports exactly k1.
#[test]
fn criterion_2_first_witness_minimality() {
    let mut rng = ChaCha8Rng::seed_from_u64(0xacce9702);
    let step_s = 1.0;
    for case in 0..100 {
        let k1 = rng.gen_range(1..30u64);
        let k2 = rng.gen_range(k1 + 1..=40u64);
        let speed = rng.gen_range(0.5..3.0);
        let r = 0.2 * speed * step_s; // overlap window shorter than a step
        let mut objects = Vec::new();
        // One head-on pair per planted collision, on separated y lanes.
        for (pair, k) in [(0u32, k1), (1u32, k2)] {
            let lane = 100.0 * f64::from(pair + 1);
            let x0 = k as f64 * step_s * speed;
            objects.push(WorldObject::new(
                ObjectId(2 * pair),
                r,
                Box::new(LinearDynamics::new(
                    [-x0, lane, 0.0],
                    [speed, 0.0, 0.0],
                    step_s,
                )),
            ));
            objects.push(WorldObject::new(
                ObjectId(2 * pair + 1),
                r,
                Box::new(LinearDynamics::new(
                    [x0, lane, 0.0],
                    [-speed, 0.0, 0.0],
                    step_s,
                )),
            ));
        }
        let mut p = ProblemInstance::new(objects, 50.0, step_s).unwrap();
        let w = detect_4d(&mut p).expect("planted collision");
        assert_eq!(w.step, k1, "case {case}: expected step {k1}, got {}", w.step);
        assert_eq!(w.t_s, k1 as f64 * step_s);
    }
    println!("ACCEPTANCE 2: PASS — 100 planted-collision instances all report the earlier step");
}

fn ulps_apart(a: f64, b: f64) -> bool {
    a == b || a.next_up() == b || b.next_up() == a
}

// Criterion 3: interval occupancy is exact (to 1 ulp) on instant
// intervals, nests monotonically, and contains sampled instant
// occupancies.
#[test]
fn criterion_3_interval_occupancy_properties() {
    let mut rng = ChaCha8Rng::seed_from_u64(0xacce9703);
    for case in 0..1000 {
        let el = OrbitalElements::new(
            rng.gen_range(6.6e6..4.5e7),
            rng.gen_range(0.0..0.8),
            rng.gen_range(0.0..std::f64::consts::PI),
            rng.gen_range(0.0..std::f64::consts::TAU),
            rng.gen_range(0.0..std::f64::consts::TAU),
            rng.gen_range(0.0..std::f64::consts::TAU),
        )
        .unwrap();
        let r = rng.gen_range(0.0..100.0);
        let step_s = rng.gen_range(0.5..5.0);
        let mut obj = WorldObject::new(
            ObjectId(0),
            r,
            Box::new(KeplerDynamics::new(el, GravParam::default(), step_s)),
        );

        // Property 1: an instant interval reproduces the exact cube.
        let t = rng.gen_range(0..300u64);
        obj.set_time_steps(t, t);
        let instant = obj.occ_4d().space;
        let exact = obj.occ(t);
        for k in 0..3 {
            assert!(
                ulps_apart(instant.min()[k], exact.min()[k])
                    && ulps_apart(instant.max()[k], exact.max()[k]),
                "case {case}: instant interval differs beyond 1 ulp on axis {k}"
            );
        }

        // Property 2: nested intervals give nested boxes.
        let lo = rng.gen_range(0..200u64);
        let hi = lo + rng.gen_range(0..200u64);
        let inner_lo = rng.gen_range(lo..=hi);
        let inner_hi = rng.gen_range(inner_lo..=hi);
        obj.set_time_steps(lo, hi);
        let outer = obj.occ_4d();
        obj.set_time_steps(inner_lo, inner_hi);
        let inner = obj.occ_4d();
        assert!(
            outer.contains(&inner),
            "case {case}: nested interval escaped the outer box"
        );

        // Containment: 100 sampled instant occupancies lie in the box.
        for _ in 0..100 {
            let s = rng.gen_range(lo..=hi);
            let cube = obj.occ(s);
            assert!(
                outer.space.contains_box(&cube),
                "case {case}: occupancy at step {s} escapes the interval box"
            );
        }
    }
    println!(
        "ACCEPTANCE 3: PASS — instant exactness (1 ulp), monotone nesting, and 100-sample \
         containment on 1000 random orbits"
    );
}

// Criterion 4: verification mode holds its loop invariants across the
// random suite, and each of three planted bugs trips a violation.
#[test]
fn criterion_4_loop_invariants_and_mutations() {
    let mut rng = ChaCha8Rng::seed_from_u64(0xacce9704);
    let verify = DetectOptions {
        verify: true,
        ..Default::default()
    };
    for i in 0..1000 {
        let mut p = random_instance(&mut rng, i);
        let report = detect_4d_with(&mut p, &verify)
            .unwrap_or_else(|e| panic!("instance {i}: invariant violated on a clean run: {e}"));
        let brute = detect_brute(&mut p);
        assert_eq!(report.witness.map(|w| w.step), brute.map(|w| w.step));
    }

    // Planted bugs. Each must be caught; the same instances must pass
    // without the fault.
    let quiet = || {
        ProblemInstance::new(
            vec![
                WorldObject::new(
                    ObjectId(0),
                    1.0,
                    Box::new(LinearDynamics::new([0.0; 3], [0.0; 3], 1.0)),
                ),
                WorldObject::new(
                    ObjectId(1),
                    1.0,
                    Box::new(LinearDynamics::new([50.0, 0.0, 0.0], [0.0; 3], 1.0)),
                ),
            ],
            20.0,
            1.0,
        )
        .unwrap()
    };
    let crossing = || {
        ProblemInstance::new(
            vec![
                WorldObject::new(
                    ObjectId(0),
                    0.25,
                    Box::new(LinearDynamics::new([-10.0, 0.0, 0.0], [1.0, 0.0, 0.0], 1.0)),
                ),
                WorldObject::new(
                    ObjectId(1),
                    0.25,
                    Box::new(LinearDynamics::new([10.0, 0.0, 0.0], [-1.0, 0.0, 0.0], 1.0)),
                ),
            ],
            20.0,
            1.0,
        )
        .unwrap()
    };
    let cases: [(InjectedFault, &dyn Fn() -> ProblemInstance); 3] = [
        (InjectedFault::AdvanceSkipsStep, &quiet),
        (InjectedFault::AdvanceOmitsGap, &quiet),
        (InjectedFault::ResolveRoundsHalvingUp, &crossing),
    ];
    for (fault, mk) in cases {
        let mut clean = mk();
        detect_4d_with(&mut clean, &verify).expect("clean run verifies");
        let mut broken = mk();
        let opts = DetectOptions {
            verify: true,
            fault,
        };
        match detect_4d_with(&mut broken, &opts) {
            Err(EngineError::InvariantViolation(_)) => {}
            other => panic!("{fault:?} escaped verification: {other:?}"),
        }
    }
    println!(
        "ACCEPTANCE 4: PASS — invariants hold on 1000 verified runs; all 3 planted bugs caught"
    );
}

// Criterion 5: scalability shape. (a) the space-time tree beats the
// per-step tree by at least 10x at n=100 over 10^4 steps; (b) its
// iteration count grows sublinearly when the horizon doubles.
#[test]
fn criterion_5_scalability_shape() {
    let catalog: Vec<CatalogObject> = sample_population(300, 5150, 0.01);

    let n100 = &catalog[..100];
    let t0 = Instant::now();
    let mut p = kepler_instance_from(n100, 10.0, 1e-3);
    let basic = detect_basic_aabb(&mut p);
    let basic_s = t0.elapsed().as_secs_f64();
    assert!(basic.is_none(), "tiny radius must not collide");

    let t0 = Instant::now();
    let mut p = kepler_instance_from(n100, 10.0, 1e-3);
    let four_d = detect_4d(&mut p);
    let four_d_s = t0.elapsed().as_secs_f64();
    assert!(four_d.is_none());
    let ratio = basic_s / four_d_s;
    assert!(
        ratio >= 10.0,
        "speedup {ratio:.1}x below 10x (basic {basic_s:.3} s, 4d {four_d_s:.4} s)"
    );

    let mut iterations = Vec::new();
    for horizon in [10.0, 20.0, 40.0] {
        let mut p = kepler_instance_from(&catalog, horizon, 1e-3);
        let report = detect_4d_with(&mut p, &DetectOptions::default()).unwrap();
        assert!(report.witness.is_none());
        iterations.push(report.stats.iterations as f64);
    }
    let r1 = iterations[1] / iterations[0];
    let r2 = iterations[2] / iterations[1];
    assert!(
        r1 < 1.8 && r2 < 1.8,
        "iteration growth per horizon doubling too steep: {r1:.3}, {r2:.3}"
    );
    println!(
        "ACCEPTANCE 5: PASS — speedup {ratio:.0}x at n=100 (basic {basic_s:.3} s vs 4d \
         {four_d_s:.4} s); iteration ratios per doubling {r1:.3}, {r2:.3}"
    );
}

// Criterion 6: the full-size catalog (bundled snapshot grown to 16838)
// completes collision-free within the ten-minute budget.
#[test]
fn criterion_6_full_catalog_smoke() {
    let catalog = full_catalog();
    assert_eq!(catalog.len(), 16838);
    let started = Instant::now();
    let mut p = kepler_instance_from(&catalog, 10.0, 1e-3);
    let report = detect_4d_with(&mut p, &DetectOptions::default()).unwrap();
    let elapsed = started.elapsed().as_secs_f64();
    assert!(report.witness.is_none(), "tiny radius must not collide");
    assert!(elapsed < 600.0, "took {elapsed:.1} s, budget is 600 s");
    println!(
        "ACCEPTANCE 6: PASS — 16838 objects over 10^4 steps: none in {elapsed:.1} s \
         ({} iterations)",
        report.stats.iterations
    );
}

// Criterion 7: altitude-band statistics on the full-size catalog.
#[test]
fn criterion_7_partition_statistics() {
    let catalog = full_catalog();
    let n = catalog.len();
    let extents: Vec<_> = catalog
        .iter()
        .map(|o| orbitguard::partition::RadialExtent {
            id: o.id,
            lo_m: o.elements.perigee_m(),
            hi_m: o.elements.apogee_m(),
            radius_m: o.radius_m,
        })
        .collect();

    let six = build_bands(&extents, 6);
    edge_cover_check(&extents, &six).unwrap();
    let max6 = six.bands.iter().map(|b| b.members.len()).max().unwrap();
    assert!(
        max6 <= n / 2,
        "six bands leave a band of {max6} objects (> n/2 = {})",
        n / 2
    );

    let sixteen = build_bands(&extents, 16);
    edge_cover_check(&extents, &sixteen).unwrap();
    let counts: Vec<usize> = sixteen.bands.iter().map(|b| b.members.len()).collect();
    for (i, &c) in counts.iter().enumerate() {
        assert!(
            (1500..=7000).contains(&c),
            "band {i} holds {c} objects, outside [1500, 7000] (all: {counts:?})"
        );
    }
    println!(
        "ACCEPTANCE 7: PASS — max band at p=6 is {max6} (≤ {}), p=16 bands span {}–{}",
        n / 2,
        counts.iter().min().unwrap(),
        counts.iter().max().unwrap()
    );
}

// Criterion 8: propagation accuracy at the pinned tolerances.
#[test]
fn criterion_8_dynamics_correctness() {
    let mu = GravParam::default();

    // Circular closed form to 1e-9 relative error over one period.
    let el = OrbitalElements::new(7.0e6, 0.0, 0.0, 0.0, 0.0, 0.0).unwrap();
    let period = orbital_period_s(&el, mu);
    let mean_motion = (mu.0 / 7.0e6f64.powi(3)).sqrt();
    let mut prop = KeplerPropagator::new(el, mu, 1.0);
    let mut worst_rel = 0.0f64;
    for frac in [0.1, 0.25, 0.5, 0.75, 1.0] {
        let t = period * frac;
        let rel = ((prop.nu_at_time(t) - mean_motion * t) / (mean_motion * t)).abs();
        worst_rel = worst_rel.max(rel);
    }
    assert!(worst_rel <= 1e-9, "circular-orbit error {worst_rel:.2e}");

    // Period closure for e = 0.7 within 1e-6 rad.
    let el = OrbitalElements::new(7.0e6, 0.7, 0.3, 0.2, 0.1, 0.4).unwrap();
    let period = orbital_period_s(&el, mu);
    let mut prop = KeplerPropagator::new(el, mu, 1e-2);
    let closure = (prop.nu_at_time(period) - (0.4 + std::f64::consts::TAU)).abs();
    assert!(closure < 1e-6, "period closure error {closure:.2e} rad");

    // Perigee/apogee radius bounds over 10^3 random element sets.
    let mut rng = ChaCha8Rng::seed_from_u64(0xacce9708);
    for _ in 0..1000 {
        let el = OrbitalElements::new(
            rng.gen_range(6.6e6..4.5e7),
            rng.gen_range(0.0..0.8),
            rng.gen_range(0.0..std::f64::consts::PI),
            rng.gen_range(0.0..std::f64::consts::TAU),
            rng.gen_range(0.0..std::f64::consts::TAU),
            rng.gen_range(0.0..std::f64::consts::TAU),
        )
        .unwrap();
        let nu = rng.gen_range(-20.0..20.0);
        let p = elements_to_eci(&el, nu);
        let r = (p[0] * p[0] + p[1] * p[1] + p[2] * p[2]).sqrt();
        let slack = 1e-9 * el.apogee_m();
        assert!(
            r >= el.perigee_m() - slack && r <= el.apogee_m() + slack,
            "radius {r} outside [{}, {}]",
            el.perigee_m(),
            el.apogee_m()
        );
    }
    println!(
        "ACCEPTANCE 8: PASS — circular error {worst_rel:.1e} (≤1e-9), e=0.7 closure \
         {closure:.1e} rad (<1e-6), radius bounds on 1000 orbits"
    );
}

// Criterion 9: checksum validation catches all 100 fuzzed records, and
// Kepler's equation converges to 1e-12 residuals on every parsed record.
#[test]
fn criterion_9_tle_ingestion() {
    let mu = GravParam::default();
    let mut rng = ChaCha8Rng::seed_from_u64(0xacce9709);
    let objects = sample_population(100, 909, 1.0);
    let mut caught = 0;
    for o in &objects {
        let rec = orbitguard::ingest::elements_to_tle_record(&o.elements, o.id.0, mu);
        let (l1, l2) = format_tle(&rec);
        let corrupt_line: bool = rng.gen();
        let line = if corrupt_line { &l1 } else { &l2 };
        let digits: Vec<usize> = line[..68]
            .char_indices()
            .filter(|(i, c)| *i >= 2 && c.is_ascii_digit())
            .map(|(i, _)| i)
            .collect();
        let pos = digits[rng.gen_range(0..digits.len())];
        let old = line.as_bytes()[pos] - b'0';
        let new = (old + rng.gen_range(1..10)) % 10;
        let mut corrupted = line.clone();
        corrupted.replace_range(pos..pos + 1, &new.to_string());
        let text = if corrupt_line {
            format!("{corrupted}\n{l2}\n")
        } else {
            format!("{l1}\n{corrupted}\n")
        };
        let (records, issues) = parse_tle(&text);
        assert!(records.is_empty(), "corrupted record slipped through");
        assert!(
            matches!(issues[0].error, IngestError::ChecksumMismatch { .. }),
            "wrong rejection: {:?}",
            issues[0].error
        );
        caught += 1;
    }
    assert_eq!(caught, 100);

    // Every record of the bundled snapshot satisfies the Newton residual.
    let text = std::fs::read_to_string(seed_catalog_path()).unwrap();
    let records = orbitguard::ingest::parse_tle_strict(&text).unwrap();
    assert!(!records.is_empty());
    let mut worst = 0.0f64;
    for rec in &records {
        let m = rec.mean_anomaly_deg.to_radians();
        let e = rec.eccentricity;
        let ecc_anomaly = solve_kepler(m, e).expect("convergence");
        worst = worst.max((ecc_anomaly - e * ecc_anomaly.sin() - m).abs());
        tle_to_elements(rec, mu).unwrap();
    }
    assert!(worst < 1e-12, "worst Newton residual {worst:.2e}");
    let n = records.len();
    records_to_catalog(&records, mu, 1.0).unwrap();
    println!(
        "ACCEPTANCE 9: PASS — 100/100 corrupted records rejected by checksum; worst Newton \
         residual {worst:.1e} across {n} records"
    );
}
