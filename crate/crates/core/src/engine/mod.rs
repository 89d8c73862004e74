//! The collision detectors.
//!
//! Three algorithms solve the same problem — find the first grid time at
//! which any two objects' occupancy cubes overlap, or prove there is none
//! up to the horizon:
//!
//! * [`detect_brute`] checks every pair at every step.
//! * [`detect_basic_aabb`] rebuilds a bounding-box tree at every step.
//! * [`detect_4d`] keeps one space-time tree and advances each object on
//!   its own schedule, doubling an object's time interval while it stays
//!   clear of everything else and shrinking intervals only around
//!   potential contacts.
//!
//! Times are handled as integer step counts internally and converted to
//! seconds only at the dynamics boundary, so interval bookkeeping (what
//! is a point interval, which interval ends first) is exact.

pub mod queue;

use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;

use thiserror::Error;

use crate::geometry::{AabbTree4d, Box3, Box4, Vec3};
use crate::interval::Interval;
use crate::ObjectId;
use queue::MaxTimeQueue;

/// Motion model an object is tracked under.
///
/// `position` and `position_box` take `&mut self` so implementations can
/// memoize integration state; both must be deterministic for a given step.
pub trait Dynamics: Send {
    /// Step length in seconds this model was built for.
    fn step_seconds(&self) -> f64;

    /// Exact position at a grid step.
    fn position(&mut self, step: u64) -> Vec3;

    /// A box containing the object's position at every time (not just
    /// every grid step) in `[lo_step, hi_step]`. Must return the exact
    /// degenerate box when `lo_step == hi_step`, and nested boxes for
    /// nested step ranges.
    fn position_box(&mut self, lo_step: u64, hi_step: u64) -> Box3;

    /// Bounds on the distance from the origin over the whole horizon,
    /// used for static partitioning.
    fn radial_bounds(&self, total_steps: u64) -> (f64, f64);

    fn clone_dynamics(&self) -> Box<dyn Dynamics>;
}

impl Clone for Box<dyn Dynamics> {
    fn clone(&self) -> Self {
        self.clone_dynamics()
    }
}

/// A tracked object: identity, motion model, cube half-edge, and the
/// engine-owned time interval in steps.
pub struct WorldObject {
    id: ObjectId,
    radius: f64,
    dynamics: Box<dyn Dynamics>,
    t_lo: u64,
    t_hi: u64,
}

impl Clone for WorldObject {
    fn clone(&self) -> Self {
        Self {
            id: self.id,
            radius: self.radius,
            dynamics: self.dynamics.clone(),
            t_lo: self.t_lo,
            t_hi: self.t_hi,
        }
    }
}

impl WorldObject {
    /// Panics if the radius is negative or non-finite.
    pub fn new(id: ObjectId, radius: f64, dynamics: Box<dyn Dynamics>) -> Self {
        assert!(radius >= 0.0 && radius.is_finite(), "bad radius {radius}");
        Self {
            id,
            radius,
            dynamics,
            t_lo: 0,
            t_hi: 0,
        }
    }

    pub fn id(&self) -> ObjectId {
        self.id
    }

    pub fn radius(&self) -> f64 {
        self.radius
    }

    /// Current time interval as `(t_min, t_max)` in steps.
    pub fn time_steps(&self) -> (u64, u64) {
        (self.t_lo, self.t_hi)
    }

    /// Set the tracked time interval in steps. The detection loop owns
    /// and rewrites this during a run; setting it directly is for
    /// exercising [`WorldObject::occ_4d`] at a chosen interval.
    pub fn set_time_steps(&mut self, lo: u64, hi: u64) {
        assert!(lo <= hi, "inverted step interval [{lo}, {hi}]");
        self.t_lo = lo;
        self.t_hi = hi;
    }

    pub fn radial_bounds(&self, total_steps: u64) -> (f64, f64) {
        self.dynamics.radial_bounds(total_steps)
    }

    /// Occupancy cube at a grid step: the box of half-edge `radius`
    /// centered on the exact position.
    pub fn occ(&mut self, step: u64) -> Box3 {
        Box3::cube(self.dynamics.position(step), self.radius)
    }

    /// Space-time box over the object's current time interval: the
    /// position bounds inflated by the radius, times the interval itself.
    pub fn occ_4d(&mut self) -> Box4 {
        let step_s = self.dynamics.step_seconds();
        let space = self
            .dynamics
            .position_box(self.t_lo, self.t_hi)
            .inflate(self.radius);
        let time = Interval::new(self.t_lo as f64 * step_s, self.t_hi as f64 * step_s);
        Box4::new(space, time)
    }
}

/// A full detection problem: the objects, the horizon, and the step.
pub struct ProblemInstance {
    objects: Vec<WorldObject>,
    horizon_s: f64,
    step_s: f64,
    total_steps: u64,
}

impl Clone for ProblemInstance {
    fn clone(&self) -> Self {
        Self {
            objects: self.objects.clone(),
            horizon_s: self.horizon_s,
            step_s: self.step_s,
            total_steps: self.total_steps,
        }
    }
}

impl ProblemInstance {
    /// Validates the time grid (the horizon must be a whole number of
    /// steps), id uniqueness, and that every object's dynamics was built
    /// for the same step length.
    pub fn new(
        objects: Vec<WorldObject>,
        horizon_s: f64,
        step_s: f64,
    ) -> Result<Self, EngineError> {
        if !(step_s > 0.0 && step_s.is_finite()) {
            return Err(EngineError::InvalidInstance(format!(
                "step must be positive, got {step_s}"
            )));
        }
        if !(horizon_s >= step_s && horizon_s.is_finite()) {
            return Err(EngineError::InvalidInstance(format!(
                "horizon {horizon_s} must be at least one step {step_s}"
            )));
        }
        let steps = (horizon_s / step_s).round();
        if steps < 1.0 || steps > (1u64 << 50) as f64 {
            return Err(EngineError::InvalidInstance(format!(
                "horizon/step ratio {steps} out of range"
            )));
        }
        if (steps * step_s - horizon_s).abs() > 1e-9 * horizon_s.max(1.0) {
            return Err(EngineError::InvalidInstance(format!(
                "horizon {horizon_s} is not a whole number of {step_s}-second steps"
            )));
        }
        let mut seen = HashMap::new();
        for (i, obj) in objects.iter().enumerate() {
            if let Some(prev) = seen.insert(obj.id, i) {
                return Err(EngineError::InvalidInstance(format!(
                    "duplicate object id {} at positions {prev} and {i}",
                    obj.id
                )));
            }
            if obj.dynamics.step_seconds() != step_s {
                return Err(EngineError::InvalidInstance(format!(
                    "object {} dynamics built for step {} but instance uses {step_s}",
                    obj.id,
                    obj.dynamics.step_seconds()
                )));
            }
        }
        Ok(Self {
            objects,
            horizon_s,
            step_s,
            total_steps: steps as u64,
        })
    }

    pub fn len(&self) -> usize {
        self.objects.len()
    }

    pub fn is_empty(&self) -> bool {
        self.objects.is_empty()
    }

    pub fn horizon_s(&self) -> f64 {
        self.horizon_s
    }

    pub fn step_s(&self) -> f64 {
        self.step_s
    }

    pub fn total_steps(&self) -> u64 {
        self.total_steps
    }

    pub fn objects(&self) -> &[WorldObject] {
        &self.objects
    }

    pub fn objects_mut(&mut self) -> &mut [WorldObject] {
        &mut self.objects
    }

    fn reset_intervals(&mut self) {
        for obj in &mut self.objects {
            obj.set_time_steps(0, 0);
        }
    }
}

/// A pair of objects whose occupancy cubes overlap at a grid time.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CollisionWitness {
    pub a: ObjectId,
    pub b: ObjectId,
    /// Collision time as a step count.
    pub step: u64,
    /// Collision time in seconds (`step * step_s`).
    pub t_s: f64,
}

impl CollisionWitness {
    /// Order-free key for deduplication.
    pub fn pair_key(&self) -> (ObjectId, ObjectId, u64) {
        (self.a.min(self.b), self.a.max(self.b), self.step)
    }
}

impl fmt::Display for CollisionWitness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "objects {} and {} at t={} s", self.a, self.b, self.t_s)
    }
}

#[derive(Debug, Error)]
pub enum EngineError {
    #[error("invalid problem instance: {0}")]
    InvalidInstance(String),
    #[error("invariant violation: {0}")]
    InvariantViolation(String),
}

/// Deliberate bugs that can be injected into the detection loop; used to
/// check that verification mode actually catches broken runs.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum InjectedFault {
    #[default]
    None,
    /// `advance_time` starts the new interval two steps past the old end.
    AdvanceSkipsStep,
    /// `advance_time` starts the new interval at the old end (no gap step).
    AdvanceOmitsGap,
    /// Interval halving rounds up instead of down, so width-1 intervals
    /// stop shrinking.
    ResolveRoundsHalvingUp,
}

#[derive(Debug, Clone, Default)]
pub struct DetectOptions {
    /// Check loop invariants at every iteration and re-verify any witness.
    pub verify: bool,
    pub fault: InjectedFault,
}

/// Counters from one detection run.
#[derive(Debug, Clone, Copy, Default)]
pub struct RunStats {
    /// Main-loop iterations (one object advanced per iteration).
    pub iterations: u64,
    pub tree_inserts: u64,
    pub tree_updates: u64,
    pub queries: u64,
    /// Passes of the overlap-resolution inner loop.
    pub resolve_passes: u64,
    /// Times a neighbor's interval start was raised to the current object's.
    pub resolve_raise_min: u64,
    /// Times a neighbor's interval was halved.
    pub resolve_halve_other: u64,
    /// Times the current object's interval was halved.
    pub resolve_halve_current: u64,
}

#[derive(Debug, Clone)]
pub struct RunReport {
    pub witness: Option<CollisionWitness>,
    pub stats: RunStats,
}

/// Selects one of the three detectors.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Algorithm {
    Brute,
    BasicAabb,
    Aabb4d,
}

impl fmt::Display for Algorithm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Algorithm::Brute => "brute",
            Algorithm::BasicAabb => "basic-aabb",
            Algorithm::Aabb4d => "aabb-4d",
        })
    }
}

impl FromStr for Algorithm {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "brute" => Ok(Algorithm::Brute),
            "basic-aabb" => Ok(Algorithm::BasicAabb),
            "aabb-4d" => Ok(Algorithm::Aabb4d),
            other => Err(format!(
                "unknown algorithm {other:?} (expected brute, basic-aabb, or aabb-4d)"
            )),
        }
    }
}

/// Runs the selected detector with default options.
pub fn detect(p: &mut ProblemInstance, algo: Algorithm) -> Option<CollisionWitness> {
    match algo {
        Algorithm::Brute => detect_brute(p),
        Algorithm::BasicAabb => detect_basic_aabb(p),
        Algorithm::Aabb4d => detect_4d(p),
    }
}

fn witness(p: &ProblemInstance, a: ObjectId, b: ObjectId, step: u64) -> CollisionWitness {
    CollisionWitness {
        a,
        b,
        step,
        t_s: step as f64 * p.step_s,
    }
}

/// Re-check a witness against the exact per-step occupancy cubes.
pub fn witness_is_exact(p: &mut ProblemInstance, w: &CollisionWitness) -> bool {
    let ia = p.objects.iter().position(|o| o.id == w.a);
    let ib = p.objects.iter().position(|o| o.id == w.b);
    match (ia, ib) {
        (Some(ia), Some(ib)) if ia != ib => {
            let ba = p.objects[ia].occ(w.step);
            let bb = p.objects[ib].occ(w.step);
            ba.intersects(&bb)
        }
        _ => false,
    }
}

/// Exhaustive pairwise checking at every grid step. The reference oracle:
/// minimum-time witness, ties broken by the smallest index pair.
pub fn detect_brute(p: &mut ProblemInstance) -> Option<CollisionWitness> {
    let n = p.objects.len();
    if n < 2 {
        return None;
    }
    let mut boxes: Vec<Box3> = Vec::with_capacity(n);
    for step in 0..=p.total_steps {
        boxes.clear();
        for obj in &mut p.objects {
            boxes.push(obj.occ(step));
        }
        for i in 0..n {
            for j in (i + 1)..n {
                if boxes[i].intersects(&boxes[j]) {
                    return Some(witness(p, p.objects[i].id, p.objects[j].id, step));
                }
            }
        }
    }
    None
}

/// Per-step sweep: rebuild a tree of occupancy cubes at each grid step,
/// querying before each insert. Same witness time as [`detect_brute`];
/// the pair may differ when several pairs first collide together.
pub fn detect_basic_aabb(p: &mut ProblemInstance) -> Option<CollisionWitness> {
    let n = p.objects.len();
    if n < 2 {
        return None;
    }
    for step in 0..=p.total_steps {
        let t_s = step as f64 * p.step_s;
        let mut tree = AabbTree4d::new();
        for i in 0..n {
            let cube = p.objects[i].occ(step);
            let b = Box4::new(cube, Interval::point(t_s));
            let hits = tree.query(&b);
            if let Some(&first) = hits.first() {
                return Some(witness(p, first, p.objects[i].id, step));
            }
            tree.insert(p.objects[i].id, b).expect("ids are unique");
        }
    }
    None
}

/// Variable-time-step detection over one space-time tree.
pub fn detect_4d(p: &mut ProblemInstance) -> Option<CollisionWitness> {
    detect_4d_with(p, &DetectOptions::default())
        .expect("no invariant checking requested")
        .witness
}

/// As [`detect_4d`], returning run counters and honoring
/// [`DetectOptions`]. With `verify` set, loop invariants are asserted at
/// every iteration and a violation aborts the run with a state dump.
pub fn detect_4d_with(
    p: &mut ProblemInstance,
    opts: &DetectOptions,
) -> Result<RunReport, EngineError> {
    let mut stats = RunStats::default();
    if p.objects.len() < 2 {
        return Ok(RunReport {
            witness: None,
            stats,
        });
    }
    p.reset_intervals();
    let mut run = Run::new(p, opts, &mut stats);
    let witness = run.execute()?;
    if opts.verify {
        if let Some(w) = &witness {
            if !witness_is_exact(p, w) {
                return Err(EngineError::InvariantViolation(format!(
                    "reported witness {w} does not overlap under exact occupancy"
                )));
            }
        }
    }
    Ok(RunReport { witness, stats })
}

/// Grow an object's interval: the new interval starts one step past the
/// old end and doubles the previous width (minimum one step), clamped to
/// the horizon.
pub fn advance_time(obj: &mut WorldObject, total_steps: u64) {
    advance_time_impl(obj, total_steps, InjectedFault::None);
}

fn advance_time_impl(obj: &mut WorldObject, total_steps: u64, fault: InjectedFault) {
    debug_assert!(obj.t_hi < total_steps);
    let prev_steps = obj.t_hi - obj.t_lo;
    let next_steps = if prev_steps > 0 { 2 * prev_steps } else { 1 };
    let lo = match fault {
        InjectedFault::AdvanceSkipsStep => obj.t_hi + 2,
        InjectedFault::AdvanceOmitsGap => obj.t_hi,
        _ => obj.t_hi + 1,
    };
    let hi = (lo + next_steps).min(total_steps);
    obj.set_time_steps(lo, hi.max(lo));
}

/// One in-flight 4D detection run: the tree, the interval-end queue, and
/// the verification state.
struct Run<'a> {
    objects: &'a mut [WorldObject],
    step_s: f64,
    total_steps: u64,
    tree: AabbTree4d,
    queue: MaxTimeQueue,
    slot: HashMap<ObjectId, usize>,
    stats: &'a mut RunStats,
    verify: bool,
    fault: InjectedFault,
    /// Grid steps already proven collision-free (verification mode).
    verified_steps: u64,
    prev_lo: Vec<u64>,
}

impl<'a> Run<'a> {
    fn new(p: &'a mut ProblemInstance, opts: &DetectOptions, stats: &'a mut RunStats) -> Self {
        let slot = p
            .objects
            .iter()
            .enumerate()
            .map(|(i, o)| (o.id, i))
            .collect();
        let prev_lo = vec![0; p.objects.len()];
        Self {
            objects: &mut p.objects,
            step_s: p.step_s,
            total_steps: p.total_steps,
            tree: AabbTree4d::new(),
            queue: MaxTimeQueue::new(),
            slot,
            stats,
            verify: opts.verify,
            fault: opts.fault,
            verified_steps: 0,
            prev_lo,
        }
    }

    fn execute(&mut self) -> Result<Option<CollisionWitness>, EngineError> {
        if let Some((a, b)) = self.initialize_tree() {
            let (ia, ib) = (self.objects[a].id, self.objects[b].id);
            return Ok(Some(CollisionWitness {
                a: ia,
                b: ib,
                step: 0,
                t_s: 0.0,
            }));
        }
        loop {
            let (front_hi, front_id) = self.queue.peek().expect("n >= 2");
            if front_hi >= self.total_steps {
                break;
            }
            self.stats.iterations += 1;
            if self.verify {
                self.check_loop_invariants(front_hi)?;
            }
            let v = self.slot[&front_id];
            let old_hi = self.objects[v].t_hi;
            advance_time_impl(&mut self.objects[v], self.total_steps, self.fault);
            if self.verify {
                let (lo, hi) = self.objects[v].time_steps();
                if lo != old_hi + 1 || lo > hi || hi > self.total_steps {
                    return Err(self.violation(format!(
                        "advance moved object {front_id} from end {old_hi} to [{lo}, {hi}]"
                    )));
                }
            }
            self.update_object(v);
            log::trace!(
                target: "orbitguard::engine",
                "iter={} object={} interval=[{}, {}] tree_size={} queue_len={}",
                self.stats.iterations,
                front_id,
                self.objects[v].t_lo,
                self.objects[v].t_hi,
                self.tree.len(),
                self.queue.len(),
            );
            if let Some(u) = self.resolve_collisions(v)? {
                let step = self.objects[v].t_lo;
                return Ok(Some(CollisionWitness {
                    a: self.objects[v].id,
                    b: self.objects[u].id,
                    step,
                    t_s: step as f64 * self.step_s,
                }));
            }
        }
        log::debug!(
            target: "orbitguard::engine",
            "run complete: n={} steps={} iterations={} (linear bound {})",
            self.objects.len(),
            self.total_steps,
            self.stats.iterations,
            self.objects.len() as u64 * self.total_steps,
        );
        Ok(None)
    }

    /// Insert every object with the instant interval `[0, 0]`, stopping at
    /// the first pair already overlapping at time zero.
    fn initialize_tree(&mut self) -> Option<(usize, usize)> {
        for i in 0..self.objects.len() {
            self.objects[i].set_time_steps(0, 0);
            let b = self.objects[i].occ_4d();
            self.stats.queries += 1;
            let hits = self.tree.query(&b);
            if let Some(&first) = hits.first() {
                return Some((i, self.slot[&first]));
            }
            let id = self.objects[i].id;
            self.tree.insert(id, b).expect("ids are unique");
            self.queue.push(id, 0);
            self.stats.tree_inserts += 1;
        }
        None
    }

    /// Push the object's current space-time box into the tree and queue.
    fn update_object(&mut self, i: usize) {
        let b = self.objects[i].occ_4d();
        let id = self.objects[i].id;
        self.tree.update(id, b).expect("object is in the tree");
        self.queue.update(id, self.objects[i].t_hi);
        self.stats.tree_updates += 1;
    }

    /// Objects whose stored box overlaps the current box of `v`, as slots.
    fn query_object(&mut self, v: usize) -> Vec<usize> {
        let b = self.objects[v].occ_4d();
        self.stats.queries += 1;
        let id = self.objects[v].id;
        self.tree
            .query(&b)
            .into_iter()
            .filter(|hit| *hit != id)
            .map(|hit| self.slot[&hit])
            .collect()
    }

    /// Shrink time intervals until `v` overlaps nothing, or both `v` and
    /// some neighbor are pinned to the same instant and still overlap — a
    /// collision. Only `v` may overlap others on entry; `v`'s interval
    /// start is never moved.
    fn resolve_collisions(&mut self, v: usize) -> Result<Option<usize>, EngineError> {
        let mut overlaps = self.query_object(v);
        while !overlaps.is_empty() {
            self.stats.resolve_passes += 1;
            let before = self.verify.then(|| self.step_budget(v, &overlaps));
            for &y in &overlaps {
                let vbox = self.objects[v].occ_4d();
                let ybox = self.objects[y].occ_4d();
                // Entries can go stale while this pass shrinks intervals.
                if !ybox.intersects(&vbox) {
                    continue;
                }
                let (y_lo, y_hi) = self.objects[y].time_steps();
                let (v_lo, v_hi) = self.objects[v].time_steps();
                let steps_y = y_hi - y_lo;
                let steps_v = v_hi - v_lo;
                if steps_y == 0 && steps_v == 0 {
                    return Ok(Some(y));
                } else if y_lo < v_lo {
                    // Overlap in time guarantees y_hi >= v_lo.
                    self.objects[y].set_time_steps(v_lo, y_hi);
                    self.update_object(y);
                    self.stats.resolve_raise_min += 1;
                } else if steps_v <= steps_y {
                    let new_steps = self.halve(steps_y);
                    self.objects[y].set_time_steps(y_lo, y_lo + new_steps);
                    self.update_object(y);
                    self.stats.resolve_halve_other += 1;
                } else {
                    let new_steps = self.halve(steps_v);
                    self.objects[v].set_time_steps(v_lo, v_lo + new_steps);
                    self.update_object(v);
                    self.stats.resolve_halve_current += 1;
                }
            }
            let next = self.query_object(v);
            if self.verify {
                if let Some(before) = before {
                    let after = self.step_budget(v, &overlaps);
                    if after >= before {
                        return Err(self.violation(format!(
                            "resolution pass made no progress: step budget {before} -> {after}"
                        )));
                    }
                }
                if !next.iter().all(|s| overlaps.contains(s)) {
                    return Err(self.violation(
                        "overlap set grew between queries during resolution".to_string(),
                    ));
                }
            }
            overlaps = next;
        }
        Ok(None)
    }

    fn halve(&self, steps: u64) -> u64 {
        if self.fault == InjectedFault::ResolveRoundsHalvingUp {
            steps.div_ceil(2)
        } else {
            steps / 2
        }
    }

    /// Total interval width (in steps) across `v` and a set of neighbors.
    fn step_budget(&self, v: usize, others: &[usize]) -> u64 {
        let width = |i: usize| self.objects[i].t_hi - self.objects[i].t_lo;
        width(v) + others.iter().map(|&y| width(y)).sum::<u64>()
    }

    /// Loop invariants, checked at the top of each iteration:
    /// every interval starts at most one step past the earliest interval
    /// end, interval starts never move backwards, and (on small
    /// instances) no collision exists at any already-covered step.
    fn check_loop_invariants(&mut self, front_hi: u64) -> Result<(), EngineError> {
        for i in 0..self.objects.len() {
            let (lo, _) = self.objects[i].time_steps();
            if lo > front_hi + 1 {
                let id = self.objects[i].id;
                return Err(self.violation(format!(
                    "object {id} starts at step {lo}, past earliest end {front_hi} + 1"
                )));
            }
            if lo < self.prev_lo[i] {
                let id = self.objects[i].id;
                return Err(self.violation(format!(
                    "object {id} interval start moved backwards: {} -> {lo}",
                    self.prev_lo[i]
                )));
            }
            self.prev_lo[i] = lo;
        }
        if self.objects.len() <= 256 {
            self.tree.check_invariants();
        }
        if self.objects.len() <= 20 {
            // Exhaustive recheck of [0, front_hi]; steps already proven
            // clear on earlier iterations are not re-tested.
            let upto = front_hi.min(self.total_steps);
            for step in self.verified_steps..=upto {
                for i in 0..self.objects.len() {
                    for j in (i + 1)..self.objects.len() {
                        let a = self.objects[i].occ(step);
                        let b = self.objects[j].occ(step);
                        if a.intersects(&b) {
                            let (ia, ib) = (self.objects[i].id, self.objects[j].id);
                            return Err(self.violation(format!(
                                "missed collision between {ia} and {ib} at step {step}"
                            )));
                        }
                    }
                }
            }
            self.verified_steps = upto + 1;
        }
        Ok(())
    }

    fn violation(&self, msg: String) -> EngineError {
        let mut dump = format!(
            "{msg}\n  iteration={} tree_size={} queue_len={} total_steps={}",
            self.stats.iterations,
            self.tree.len(),
            self.queue.len(),
            self.total_steps
        );
        if self.objects.len() <= 32 {
            for obj in self.objects.iter() {
                dump.push_str(&format!(
                    "\n  object {} interval=[{}, {}]",
                    obj.id, obj.t_lo, obj.t_hi
                ));
            }
        }
        EngineError::InvariantViolation(dump)
    }
}
