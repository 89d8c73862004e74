//! Static decomposition of a detection problem into altitude bands.
//!
//! Two objects can only collide if their distance-from-origin ranges
//! (perigee/apogee for orbits) come within a small adjustment of each
//! other; pairs that can never get that close need no pairwise checking
//! at all. Sorting objects by the midpoint of their radial range and
//! cutting at every d-th value yields contiguous altitude bands; each
//! object joins every band its adjusted range touches, so objects
//! spanning a cut are duplicated rather than any pair being lost. Each
//! band is then an independent, smaller detection problem, and the bands
//! run in parallel.

use rayon::prelude::*;
use thiserror::Error;

use crate::engine::{
    detect_4d_with, CollisionWitness, DetectOptions, EngineError, ProblemInstance, RunReport,
};
use crate::ObjectId;

#[derive(Debug, Error)]
pub enum PartitionError {
    #[error("objects {0} and {1} could collide but share no band")]
    UncoveredEdge(ObjectId, ObjectId),
    #[error(transparent)]
    Engine(#[from] EngineError),
}

/// Static radial occupancy of one object: bounds on its distance from the
/// origin over the whole horizon, plus its box radius.
#[derive(Debug, Clone, Copy)]
pub struct RadialExtent {
    pub id: ObjectId,
    pub lo_m: f64,
    pub hi_m: f64,
    pub radius_m: f64,
}

/// Radial extents of every object in an instance.
pub fn radial_extents(p: &ProblemInstance) -> Vec<RadialExtent> {
    let total = p.total_steps();
    p.objects()
        .iter()
        .map(|o| {
            let (lo_m, hi_m) = o.radial_bounds(total);
            RadialExtent {
                id: o.id(),
                lo_m,
                hi_m,
                radius_m: o.radius(),
            }
        })
        .collect()
}

/// One altitude band: a closed radial range and its member objects.
#[derive(Debug, Clone)]
pub struct Band {
    pub lo_m: f64,
    pub hi_m: f64,
    pub members: Vec<ObjectId>,
}

#[derive(Debug, Clone)]
pub struct PartitionSet {
    pub bands: Vec<Band>,
    /// Symmetric slack added to every radial range before band placement.
    pub adjustment_m: f64,
}

/// The slack that makes band membership collision-complete: two touching
/// cubes can differ in distance-from-origin by at most sqrt(3) times the
/// sum of their radii, so twice the largest radius per object covers any
/// pair, with a small relative term absorbing rounding in the radial
/// bounds themselves.
fn radial_adjustment(extents: &[RadialExtent]) -> f64 {
    let r_max = extents.iter().map(|e| e.radius_m).fold(0.0, f64::max);
    let hi_max = extents.iter().map(|e| e.hi_m).fold(0.0, f64::max);
    2.0 * r_max + 1e-9 * (1.0 + hi_max)
}

/// Cut sorted range midpoints at every d-th value (`d = ceil(n/p)`) and
/// assign each object to every band its adjusted range intersects.
/// Yields at most `p` bands covering `[0, +inf)`.
pub fn build_bands(extents: &[RadialExtent], p: usize) -> PartitionSet {
    assert!(p >= 1, "need at least one partition");
    assert!(!extents.is_empty(), "need at least one object");
    let adjustment_m = radial_adjustment(extents);

    let mut mids: Vec<f64> = extents.iter().map(|e| 0.5 * (e.lo_m + e.hi_m)).collect();
    mids.sort_by(f64::total_cmp);
    let n = mids.len();
    let d = n.div_ceil(p);
    // Cut halfway between every d-th sorted midpoint and its predecessor:
    // distinct neighbors split cleanly, while a run of equal values across
    // a cut collapses onto the shared value and duplicates those objects.
    let mut edges: Vec<f64> = (1..)
        .map(|k| k * d)
        .take_while(|&idx| idx < n)
        .map(|idx| 0.5 * (mids[idx - 1] + mids[idx]))
        .collect();
    edges.dedup();

    let mut bounds = Vec::with_capacity(edges.len() + 1);
    let mut lo = 0.0;
    for &e in &edges {
        bounds.push((lo, e));
        lo = e;
    }
    bounds.push((lo, f64::INFINITY));

    let bands = bounds
        .into_iter()
        .map(|(lo_m, hi_m)| {
            let members = extents
                .iter()
                .filter(|e| e.lo_m - adjustment_m <= hi_m && lo_m <= e.hi_m + adjustment_m)
                .map(|e| e.id)
                .collect();
            Band { lo_m, hi_m, members }
        })
        .collect();
    PartitionSet {
        bands,
        adjustment_m,
    }
}

/// Proof obligation on a partitioning: every pair whose adjusted radial
/// ranges overlap (i.e. that could possibly collide) must share at least
/// one band. [`build_bands`] satisfies this by construction; the check
/// guards hand-built or edited partitionings.
pub fn edge_cover_check(extents: &[RadialExtent], set: &PartitionSet) -> Result<(), PartitionError> {
    let adj = set.adjustment_m;
    // Contiguous band-index range per object.
    let mut band_range: std::collections::HashMap<ObjectId, (usize, usize)> =
        std::collections::HashMap::new();
    for (bi, band) in set.bands.iter().enumerate() {
        for &id in &band.members {
            band_range
                .entry(id)
                .and_modify(|(_, hi)| *hi = bi)
                .or_insert((bi, bi));
        }
    }
    for (i, a) in extents.iter().enumerate() {
        for b in extents.iter().skip(i + 1) {
            let ranges_overlap =
                a.lo_m - adj <= b.hi_m + adj && b.lo_m - adj <= a.hi_m + adj;
            if !ranges_overlap {
                continue;
            }
            let shared = match (band_range.get(&a.id), band_range.get(&b.id)) {
                (Some(&(alo, ahi)), Some(&(blo, bhi))) => alo <= bhi && blo <= ahi,
                _ => false,
            };
            if !shared {
                return Err(PartitionError::UncoveredEdge(a.id, b.id));
            }
        }
    }
    Ok(())
}

/// Aggregate result of a partitioned run.
#[derive(Debug, Clone)]
pub struct PartitionedReport {
    /// Minimum-time witness across bands, or none anywhere.
    pub witness: Option<CollisionWitness>,
    /// All distinct witnesses found (bands can rediscover the same pair).
    pub witnesses: Vec<CollisionWitness>,
    pub band_reports: Vec<RunReport>,
}

/// Run the 4D detector independently per band, in parallel, and combine.
/// The returned witness time always equals the unpartitioned detector's.
/// `workers = 0` uses one worker per available core.
pub fn detect_partitioned(
    p: &ProblemInstance,
    set: &PartitionSet,
    opts: &DetectOptions,
    workers: usize,
) -> Result<PartitionedReport, PartitionError> {
    let by_id: std::collections::HashMap<ObjectId, usize> = p
        .objects()
        .iter()
        .enumerate()
        .map(|(i, o)| (o.id(), i))
        .collect();
    let mut sub_instances: Vec<ProblemInstance> = set
        .bands
        .iter()
        .map(|band| {
            let objs = band
                .members
                .iter()
                .map(|id| p.objects()[by_id[id]].clone())
                .collect();
            ProblemInstance::new(objs, p.horizon_s(), p.step_s())
        })
        .collect::<Result<_, _>>()?;

    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(workers)
        .build()
        .expect("thread pool construction");
    let band_reports: Vec<RunReport> = pool.install(|| {
        sub_instances
            .par_iter_mut()
            .map(|inst| detect_4d_with(inst, opts))
            .collect::<Result<_, _>>()
    })?;

    let mut witnesses: Vec<CollisionWitness> = band_reports
        .iter()
        .filter_map(|r| r.witness)
        .collect();
    witnesses.sort_by_key(|w| w.pair_key());
    witnesses.dedup_by_key(|w| w.pair_key());
    let witness = witnesses
        .iter()
        .copied()
        .min_by_key(|w| (w.step, w.pair_key()));
    Ok(PartitionedReport {
        witness,
        witnesses,
        band_reports,
    })
}

/// Per-band occupancy counts.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BandStats {
    pub index: usize,
    pub alt_lo_m: f64,
    pub alt_hi_m: f64,
    pub count: usize,
}

pub fn partition_stats(set: &PartitionSet) -> Vec<BandStats> {
    set.bands
        .iter()
        .enumerate()
        .map(|(index, b)| BandStats {
            index,
            alt_lo_m: b.lo_m,
            alt_hi_m: b.hi_m,
            count: b.members.len(),
        })
        .collect()
}

/// The band table as CSV.
pub fn stats_csv(set: &PartitionSet) -> String {
    let mut out = String::from("band_index,alt_lo_m,alt_hi_m,count\n");
    for s in partition_stats(set) {
        out.push_str(&format!(
            "{},{},{},{}\n",
            s.index, s.alt_lo_m, s.alt_hi_m, s.count
        ));
    }
    out
}
