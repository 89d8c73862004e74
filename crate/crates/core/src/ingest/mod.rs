//! Catalog ingestion: two-line element (TLE) sets and the plain-text
//! canonical catalog format.
//!
//! TLE lines are fixed-column records with a modulo-10 checksum (digits
//! count their value, `-` counts one). Parsing validates line length and
//! checksum first, then pulls fields by column. Mean elements are turned
//! into position elements by solving Kepler's equation with Newton
//! iteration; drag and mean-motion-derivative fields are parsed but play
//! no role in two-body propagation.

pub mod synth;

use std::f64::consts::TAU;

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::dynamics::{GravParam, OrbitalElements};
use crate::ObjectId;

const TLE_LINE_LEN: usize = 69;
const SECONDS_PER_DAY: f64 = 86_400.0;

#[derive(Debug, Error, PartialEq)]
pub enum IngestError {
    #[error("line {line}: malformed TLE line: {reason}")]
    MalformedLine { line: usize, reason: String },
    #[error("line {line}: checksum mismatch: computed {computed}, line carries {found}")]
    ChecksumMismatch {
        line: usize,
        computed: u8,
        found: char,
    },
    #[error("line {line}: {field} out of range: {value}")]
    FieldOutOfRange {
        line: usize,
        field: &'static str,
        value: f64,
    },
    #[error("object {catalog_number}: Kepler's equation did not converge")]
    NewtonNonconvergence { catalog_number: u32 },
    #[error("object {catalog_number}: derived elements invalid: {reason}")]
    InvalidElements { catalog_number: u32, reason: String },
    #[error("duplicate catalog number {0}")]
    DuplicateCatalogNumber(u32),
    #[error("catalog parse failed at line {line}: {reason}")]
    BadCatalogLine { line: usize, reason: String },
    #[error("source catalog is empty")]
    EmptySource,
}

/// One parsed TLE set (two element lines plus an optional name line).
#[derive(Debug, Clone, PartialEq)]
pub struct TleRecord {
    pub name: Option<String>,
    pub catalog_number: u32,
    pub classification: char,
    pub intl_designator: String,
    /// Two-digit epoch year as printed.
    pub epoch_year: u32,
    pub epoch_day: f64,
    /// Parsed but unused by two-body propagation.
    pub mean_motion_dot: f64,
    pub mean_motion_ddot: f64,
    pub bstar: f64,
    pub element_set_number: u32,
    pub inclination_deg: f64,
    pub raan_deg: f64,
    pub eccentricity: f64,
    pub arg_perigee_deg: f64,
    pub mean_anomaly_deg: f64,
    pub mean_motion_rev_day: f64,
    pub revolution_number: u32,
}

/// A problem reported while parsing one record in lenient mode.
#[derive(Debug)]
pub struct TleIssue {
    /// 1-based line number of the offending line.
    pub line: usize,
    pub error: IngestError,
}

/// Modulo-10 TLE checksum of everything before the checksum column:
/// digits add their value, a minus sign adds one.
pub fn tle_checksum(line: &str) -> u8 {
    let mut sum = 0u32;
    for c in line.chars().take(TLE_LINE_LEN - 1) {
        match c {
            '0'..='9' => sum += c as u32 - '0' as u32,
            '-' => sum += 1,
            _ => {}
        }
    }
    (sum % 10) as u8
}

fn validate_line(line: &str, line_no: usize) -> Result<(), IngestError> {
    if line.chars().count() != TLE_LINE_LEN {
        return Err(IngestError::MalformedLine {
            line: line_no,
            reason: format!("expected {TLE_LINE_LEN} columns, found {}", line.chars().count()),
        });
    }
    let found = line.chars().nth(TLE_LINE_LEN - 1).unwrap();
    let computed = tle_checksum(line);
    if found.to_digit(10) != Some(u32::from(computed)) {
        return Err(IngestError::ChecksumMismatch {
            line: line_no,
            computed,
            found,
        });
    }
    Ok(())
}

fn field(line: &str, range: std::ops::Range<usize>) -> &str {
    &line[range]
}

fn parse_f64(line: &str, line_no: usize, range: std::ops::Range<usize>, name: &'static str)
    -> Result<f64, IngestError>
{
    field(line, range).trim().parse::<f64>().map_err(|_| IngestError::MalformedLine {
        line: line_no,
        reason: format!("unparseable {name}"),
    })
}

fn parse_u32(line: &str, line_no: usize, range: std::ops::Range<usize>, name: &'static str)
    -> Result<u32, IngestError>
{
    let s = field(line, range).trim();
    if s.is_empty() {
        return Ok(0);
    }
    s.parse::<u32>().map_err(|_| IngestError::MalformedLine {
        line: line_no,
        reason: format!("unparseable {name}"),
    })
}

/// Implied-decimal exponent field, e.g. `" 12345-3"` -> `0.12345e-3`.
fn parse_implied_decimal(s: &str, line_no: usize, name: &'static str) -> Result<f64, IngestError> {
    let t = s.trim();
    if t.is_empty() {
        return Ok(0.0);
    }
    let (sign, rest) = match t.strip_prefix('-') {
        Some(r) => (-1.0, r),
        None => (1.0, t.strip_prefix('+').unwrap_or(t)),
    };
    let split = rest.rfind(['+', '-']);
    let (mantissa, exp) = match split {
        Some(pos) if pos > 0 => rest.split_at(pos),
        _ => (rest, "0"),
    };
    let m: f64 = mantissa.trim().parse().map_err(|_| IngestError::MalformedLine {
        line: line_no,
        reason: format!("unparseable {name} mantissa"),
    })?;
    let e: i32 = exp.parse().map_err(|_| IngestError::MalformedLine {
        line: line_no,
        reason: format!("unparseable {name} exponent"),
    })?;
    let scale = 10f64.powi(e - mantissa.trim().len() as i32);
    Ok(sign * m * scale)
}

fn parse_pair(
    name: Option<String>,
    line1: &str,
    l1_no: usize,
    line2: &str,
    l2_no: usize,
) -> Result<TleRecord, IngestError> {
    validate_line(line1, l1_no)?;
    validate_line(line2, l2_no)?;

    let catalog_number = parse_u32(line1, l1_no, 2..7, "catalog number")?;
    let catalog_number_2 = parse_u32(line2, l2_no, 2..7, "catalog number")?;
    if catalog_number != catalog_number_2 {
        return Err(IngestError::MalformedLine {
            line: l2_no,
            reason: format!(
                "catalog number {catalog_number_2} does not match line 1 ({catalog_number})"
            ),
        });
    }

    let classification = line1.chars().nth(7).unwrap();
    let intl_designator = field(line1, 9..17).trim().to_string();
    let epoch_year = parse_u32(line1, l1_no, 18..20, "epoch year")?;
    let epoch_day = parse_f64(line1, l1_no, 20..32, "epoch day")?;
    let mean_motion_dot = parse_f64(line1, l1_no, 33..43, "mean motion derivative")?;
    let mean_motion_ddot =
        parse_implied_decimal(field(line1, 44..52), l1_no, "mean motion second derivative")?;
    let bstar = parse_implied_decimal(field(line1, 53..61), l1_no, "B*")?;
    let element_set_number = parse_u32(line1, l1_no, 64..68, "element set number")?;

    let inclination_deg = parse_f64(line2, l2_no, 8..16, "inclination")?;
    let raan_deg = parse_f64(line2, l2_no, 17..25, "right ascension")?;
    let ecc_digits = parse_u32(line2, l2_no, 26..33, "eccentricity")?;
    let eccentricity = f64::from(ecc_digits) * 1e-7;
    let arg_perigee_deg = parse_f64(line2, l2_no, 34..42, "argument of perigee")?;
    let mean_anomaly_deg = parse_f64(line2, l2_no, 43..51, "mean anomaly")?;
    let mean_motion_rev_day = parse_f64(line2, l2_no, 52..63, "mean motion")?;
    let revolution_number = parse_u32(line2, l2_no, 63..68, "revolution number")?;

    for (name, value, lo, hi, line_no) in [
        ("inclination", inclination_deg, 0.0, 180.0, l2_no),
        ("right ascension", raan_deg, 0.0, 360.0, l2_no),
        ("eccentricity", eccentricity, 0.0, 0.9999999, l2_no),
        ("argument of perigee", arg_perigee_deg, 0.0, 360.0, l2_no),
        ("mean anomaly", mean_anomaly_deg, 0.0, 360.0, l2_no),
        ("mean motion", mean_motion_rev_day, 1e-6, 20.0, l2_no),
    ] {
        if !(lo..=hi).contains(&value) {
            return Err(IngestError::FieldOutOfRange {
                line: line_no,
                field: name,
                value,
            });
        }
    }

    Ok(TleRecord {
        name,
        catalog_number,
        classification,
        intl_designator,
        epoch_year,
        epoch_day,
        mean_motion_dot,
        mean_motion_ddot,
        bstar,
        element_set_number,
        inclination_deg,
        raan_deg,
        eccentricity,
        arg_perigee_deg,
        mean_anomaly_deg,
        mean_motion_rev_day,
        revolution_number,
    })
}

/// Parse a TLE file in lenient mode: bad records are reported with their
/// line numbers and skipped. Accepts two-line and three-line (named)
/// variants, mixed freely.
pub fn parse_tle(text: &str) -> (Vec<TleRecord>, Vec<TleIssue>) {
    let mut records = Vec::new();
    let mut issues = Vec::new();
    let mut pending_name: Option<String> = None;

    let lines: Vec<(usize, &str)> = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim_end_matches(['\r', '\n'])))
        .filter(|(_, l)| !l.trim().is_empty())
        .collect();

    let mut i = 0;
    while i < lines.len() {
        let (no, line) = lines[i];
        if line.starts_with("1 ") {
            if i + 1 >= lines.len() || !lines[i + 1].1.starts_with("2 ") {
                issues.push(TleIssue {
                    line: no,
                    error: IngestError::MalformedLine {
                        line: no,
                        reason: "element line 1 without a following line 2".into(),
                    },
                });
                pending_name = None;
                i += 1;
                continue;
            }
            let (no2, line2) = lines[i + 1];
            match parse_pair(pending_name.take(), line, no, line2, no2) {
                Ok(rec) => records.push(rec),
                Err(error) => issues.push(TleIssue { line: no, error }),
            }
            i += 2;
        } else if line.starts_with("2 ") {
            issues.push(TleIssue {
                line: no,
                error: IngestError::MalformedLine {
                    line: no,
                    reason: "element line 2 without a preceding line 1".into(),
                },
            });
            i += 1;
        } else {
            // Name line; a leading "0 " marker is part of some feeds.
            let name = line.strip_prefix("0 ").unwrap_or(line).trim();
            pending_name = Some(name.to_string());
            i += 1;
        }
    }
    (records, issues)
}

/// As [`parse_tle`], but any invalid record aborts the parse.
pub fn parse_tle_strict(text: &str) -> Result<Vec<TleRecord>, IngestError> {
    let (records, issues) = parse_tle(text);
    match issues.into_iter().next() {
        Some(issue) => Err(issue.error),
        None => Ok(records),
    }
}

fn encode_implied_decimal(v: f64) -> String {
    if v == 0.0 {
        return " 00000-0".to_string();
    }
    let sign = if v < 0.0 { '-' } else { ' ' };
    let mag = v.abs();
    // value = 0.ddddd * 10^e
    let mut e = mag.log10().floor() as i32 + 1;
    let mut digits = (mag / 10f64.powi(e - 5)).round() as u64;
    if digits >= 100_000 {
        digits /= 10;
        e += 1;
    }
    let esign = if e < 0 { '-' } else { '+' };
    format!("{sign}{digits:05}{esign}{}", e.abs().min(9))
}

/// Render a record as its two element lines, checksums included.
pub fn format_tle(rec: &TleRecord) -> (String, String) {
    let ndot = {
        let frac = format!("{:.8}", rec.mean_motion_dot.abs());
        let frac = frac.strip_prefix('0').unwrap_or(&frac);
        format!(
            "{}{}",
            if rec.mean_motion_dot < 0.0 { '-' } else { ' ' },
            frac
        )
    };
    let mut line1 = format!(
        "1 {:05}{} {:<8} {:02}{:012.8} {} {} {} 0 {:4}",
        rec.catalog_number,
        rec.classification,
        rec.intl_designator,
        rec.epoch_year % 100,
        rec.epoch_day,
        ndot,
        encode_implied_decimal(rec.mean_motion_ddot),
        encode_implied_decimal(rec.bstar),
        rec.element_set_number % 10_000,
    );
    line1.push(char::from_digit(u32::from(tle_checksum(&line1)), 10).unwrap());
    let mut line2 = format!(
        "2 {:05} {:8.4} {:8.4} {:07} {:8.4} {:8.4} {:11.8}{:5}",
        rec.catalog_number,
        rec.inclination_deg,
        rec.raan_deg,
        (rec.eccentricity * 1e7).round() as u64,
        rec.arg_perigee_deg,
        rec.mean_anomaly_deg,
        rec.mean_motion_rev_day,
        rec.revolution_number % 100_000,
    );
    line2.push(char::from_digit(u32::from(tle_checksum(&line2)), 10).unwrap());
    debug_assert_eq!(line1.len(), TLE_LINE_LEN);
    debug_assert_eq!(line2.len(), TLE_LINE_LEN);
    (line1, line2)
}

/// Solve Kepler's equation `M = E - e sin E` for the eccentric anomaly by
/// Newton iteration. Tolerance 1e-12 on the residual, at most 50 steps.
pub fn solve_kepler(mean_anomaly: f64, e: f64) -> Option<f64> {
    let m = mean_anomaly;
    let mut ecc_anomaly = if e < 0.8 { m } else { std::f64::consts::PI };
    for _ in 0..50 {
        let f = ecc_anomaly - e * ecc_anomaly.sin() - m;
        if f.abs() < 1e-12 {
            return Some(ecc_anomaly);
        }
        let fp = 1.0 - e * ecc_anomaly.cos();
        ecc_anomaly -= f / fp;
    }
    let f = ecc_anomaly - e * ecc_anomaly.sin() - m;
    (f.abs() < 1e-12).then_some(ecc_anomaly)
}

/// True anomaly from eccentric anomaly (quadrant-safe half-angle form).
pub fn eccentric_to_true(ecc_anomaly: f64, e: f64) -> f64 {
    2.0 * f64::atan2(
        (1.0 + e).sqrt() * (ecc_anomaly / 2.0).sin(),
        (1.0 - e).sqrt() * (ecc_anomaly / 2.0).cos(),
    )
}

/// Eccentric anomaly from true anomaly; inverse of [`eccentric_to_true`].
pub fn true_to_eccentric(true_anomaly: f64, e: f64) -> f64 {
    2.0 * f64::atan2(
        (1.0 - e).sqrt() * (true_anomaly / 2.0).sin(),
        (1.0 + e).sqrt() * (true_anomaly / 2.0).cos(),
    )
}

/// Mean elements to position elements: semi-major axis from the mean
/// motion, true anomaly from the mean anomaly via Kepler's equation.
pub fn tle_to_elements(rec: &TleRecord, mu: GravParam) -> Result<OrbitalElements, IngestError> {
    let n_rad_s = rec.mean_motion_rev_day * TAU / SECONDS_PER_DAY;
    let a = (mu.0 / (n_rad_s * n_rad_s)).cbrt();
    let m = rec.mean_anomaly_deg.to_radians();
    let e = rec.eccentricity;
    let ecc_anomaly = solve_kepler(m, e).ok_or(IngestError::NewtonNonconvergence {
        catalog_number: rec.catalog_number,
    })?;
    let nu = eccentric_to_true(ecc_anomaly, e);
    OrbitalElements::new(
        a,
        e,
        rec.inclination_deg.to_radians(),
        rec.raan_deg.to_radians(),
        rec.arg_perigee_deg.to_radians(),
        nu,
    )
    .map_err(|reason| IngestError::InvalidElements {
        catalog_number: rec.catalog_number,
        reason,
    })
}

/// Position elements back to mean TLE fields; inverse of
/// [`tle_to_elements`] up to angle wrapping.
pub fn elements_to_tle_record(el: &OrbitalElements, id: u32, mu: GravParam) -> TleRecord {
    let wrap_deg = |rad: f64| {
        let d = rad.to_degrees().rem_euclid(360.0);
        if d == 360.0 { 0.0 } else { d }
    };
    let e = el.eccentricity;
    let ecc_anomaly = true_to_eccentric(el.true_anomaly_rad, e);
    let m = (ecc_anomaly - e * ecc_anomaly.sin()).rem_euclid(TAU);
    let n_rad_s = (mu.0 / el.semi_major_axis_m.powi(3)).sqrt();
    TleRecord {
        name: None,
        catalog_number: id,
        classification: 'U',
        intl_designator: "00001A".to_string(),
        epoch_year: 24,
        epoch_day: 1.0,
        mean_motion_dot: 0.0,
        mean_motion_ddot: 0.0,
        bstar: 0.0,
        element_set_number: 999,
        inclination_deg: el.inclination_rad.to_degrees(),
        raan_deg: wrap_deg(el.raan_rad),
        eccentricity: e,
        arg_perigee_deg: wrap_deg(el.arg_perigee_rad),
        mean_anomaly_deg: m.to_degrees(),
        mean_motion_rev_day: n_rad_s * SECONDS_PER_DAY / TAU,
        revolution_number: 1,
    }
}

/// One catalog entry: identity, elements, and the tracking radius.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CatalogObject {
    pub id: ObjectId,
    pub elements: OrbitalElements,
    pub radius_m: f64,
}

/// Convert parsed records into catalog entries with a uniform radius.
/// Catalog numbers must be unique.
pub fn records_to_catalog(
    records: &[TleRecord],
    mu: GravParam,
    radius_m: f64,
) -> Result<Vec<CatalogObject>, IngestError> {
    let mut out = Vec::with_capacity(records.len());
    let mut seen = std::collections::HashSet::new();
    for rec in records {
        if !seen.insert(rec.catalog_number) {
            return Err(IngestError::DuplicateCatalogNumber(rec.catalog_number));
        }
        out.push(CatalogObject {
            id: ObjectId(rec.catalog_number),
            elements: tle_to_elements(rec, mu)?,
            radius_m,
        });
    }
    Ok(out)
}

/// Drop all but one of any group of entries with element-wise identical
/// orbits (semi-major axis compared relatively, angles and eccentricity
/// absolutely, both at 1e-12). Returns the removals as
/// `(removed, kept)` id pairs.
pub fn dedupe(objects: Vec<CatalogObject>) -> (Vec<CatalogObject>, Vec<(ObjectId, ObjectId)>) {
    fn same(a: &OrbitalElements, b: &OrbitalElements) -> bool {
        let rel = |x: f64, y: f64| (x - y).abs() <= 1e-12 * x.abs().max(y.abs()).max(1.0);
        let abs = |x: f64, y: f64| (x - y).abs() <= 1e-12;
        rel(a.semi_major_axis_m, b.semi_major_axis_m)
            && abs(a.eccentricity, b.eccentricity)
            && abs(a.inclination_rad, b.inclination_rad)
            && abs(a.raan_rad, b.raan_rad)
            && abs(a.arg_perigee_rad, b.arg_perigee_rad)
            && abs(a.true_anomaly_rad, b.true_anomaly_rad)
    }

    // Sort by semi-major axis so candidate duplicates are adjacent.
    let mut order: Vec<usize> = (0..objects.len()).collect();
    order.sort_by(|&i, &j| {
        objects[i]
            .elements
            .semi_major_axis_m
            .total_cmp(&objects[j].elements.semi_major_axis_m)
    });
    let mut removed_idx = vec![false; objects.len()];
    let mut removals = Vec::new();
    for (k, &i) in order.iter().enumerate() {
        if removed_idx[i] {
            continue;
        }
        for &j in order[k + 1..].iter() {
            let da = objects[j].elements.semi_major_axis_m
                - objects[i].elements.semi_major_axis_m;
            if da > 1e-6 * objects[i].elements.semi_major_axis_m.max(1.0) {
                break;
            }
            if !removed_idx[j] && same(&objects[i].elements, &objects[j].elements) {
                removed_idx[j] = true;
                removals.push((objects[j].id, objects[i].id));
            }
        }
    }
    let kept = objects
        .iter()
        .enumerate()
        .filter(|(i, _)| !removed_idx[*i])
        .map(|(_, o)| *o)
        .collect();
    (kept, removals)
}

/// Scale a catalog to `n_target` entries: truncate when shrinking, and
/// when growing append synthetic objects whose six elements (and radius)
/// are each drawn independently from the source's per-column values.
/// Deterministic for a given seed.
pub fn scale_catalog(
    source: &[CatalogObject],
    n_target: usize,
    seed: u64,
) -> Result<Vec<CatalogObject>, IngestError> {
    if source.is_empty() {
        return Err(IngestError::EmptySource);
    }
    if n_target <= source.len() {
        return Ok(source[..n_target].to_vec());
    }
    let mut out = source.to_vec();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let max_id = source.iter().map(|o| o.id.0).max().unwrap_or(0);
    let pick = |rng: &mut ChaCha8Rng, f: &dyn Fn(&CatalogObject) -> f64| {
        f(source.choose(rng).expect("source is nonempty"))
    };
    for k in 0..(n_target - source.len()) {
        let elements = OrbitalElements::new(
            pick(&mut rng, &|o| o.elements.semi_major_axis_m),
            pick(&mut rng, &|o| o.elements.eccentricity),
            pick(&mut rng, &|o| o.elements.inclination_rad),
            pick(&mut rng, &|o| o.elements.raan_rad),
            pick(&mut rng, &|o| o.elements.arg_perigee_rad),
            pick(&mut rng, &|o| o.elements.true_anomaly_rad),
        )
        .expect("per-column resampling preserves element validity");
        out.push(CatalogObject {
            id: ObjectId(max_id + 1 + k as u32),
            elements,
            radius_m: pick(&mut rng, &|o| o.radius_m),
        });
    }
    Ok(out)
}

/// Render the canonical plain-text catalog: one object per line.
pub fn write_catalog(objects: &[CatalogObject]) -> String {
    let mut out = String::new();
    out.push_str("# orbitguard catalog v1\n");
    out.push_str("# columns: id a_m e incl_rad raan_rad argp_rad nu0_rad radius_m\n");
    for o in objects {
        let e = &o.elements;
        out.push_str(&format!(
            "{} {} {} {} {} {} {} {}\n",
            o.id,
            e.semi_major_axis_m,
            e.eccentricity,
            e.inclination_rad,
            e.raan_rad,
            e.arg_perigee_rad,
            e.true_anomaly_rad,
            o.radius_m
        ));
    }
    out
}

/// Parse the canonical catalog format written by [`write_catalog`].
pub fn parse_catalog(text: &str) -> Result<Vec<CatalogObject>, IngestError> {
    let mut out = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let line_no = i + 1;
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let bad = |reason: String| IngestError::BadCatalogLine {
            line: line_no,
            reason,
        };
        let tokens: Vec<&str> = line.split_whitespace().collect();
        if tokens.len() != 8 {
            return Err(bad(format!("expected 8 columns, found {}", tokens.len())));
        }
        let id: u32 = tokens[0]
            .parse()
            .map_err(|_| bad(format!("bad id {:?}", tokens[0])))?;
        let mut nums = [0f64; 7];
        for (k, tok) in tokens[1..].iter().enumerate() {
            nums[k] = tok
                .parse()
                .map_err(|_| bad(format!("bad number {tok:?}")))?;
        }
        let radius_m = nums[6];
        if !(radius_m >= 0.0 && radius_m.is_finite()) {
            return Err(bad(format!("bad radius {radius_m}")));
        }
        let elements = OrbitalElements::new(nums[0], nums[1], nums[2], nums[3], nums[4], nums[5])
            .map_err(bad)?;
        out.push(CatalogObject {
            id: ObjectId(id),
            elements,
            radius_m,
        });
    }
    Ok(out)
}

/// Catalog text in either supported format, decided by content: a TLE
/// element line 1 is 69 columns, carries a classification letter in
/// column 8, and checksums — a canonical catalog line can start with
/// `1 ` too, but never passes all three.
pub fn parse_any_catalog(
    text: &str,
    mu: GravParam,
    default_radius_m: f64,
) -> Result<(Vec<CatalogObject>, Vec<TleIssue>), IngestError> {
    let looks_like_tle = text.lines().any(|l| {
        let t = l.trim_end();
        t.starts_with("1 ")
            && t.chars().count() == TLE_LINE_LEN
            && matches!(t.chars().nth(7), Some('U' | 'C' | 'S'))
            && validate_line(t, 0).is_ok()
    });
    if looks_like_tle {
        let (records, issues) = parse_tle(text);
        let objects = records_to_catalog(&records, mu, default_radius_m)?;
        Ok((objects, issues))
    } else {
        Ok((parse_catalog(text)?, Vec::new()))
    }
}
