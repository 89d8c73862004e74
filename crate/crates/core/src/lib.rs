//! Broad-phase collision prediction for large sets of moving objects.
//!
//! The core of the crate is a four-dimensional axis-aligned bounding box
//! tree: each tracked object occupies a 3D box in space over a 1D interval
//! of time, and the detection loop grows or shrinks those time intervals
//! per object instead of stepping the whole world in lockstep. Two slower
//! detectors (exhaustive pairwise checking and a per-step 3D tree sweep)
//! are kept as reference baselines.
//!
//! The crate also ships the pieces needed to run the engine on an orbital
//! catalog: closed-interval arithmetic ([`interval`]), Kepler two-body
//! propagation with interval position bounds ([`dynamics`]), TLE catalog
//! ingestion ([`ingest`]), and altitude-band partitioning for parallel
//! runs ([`partition`]).

pub mod dynamics;
pub mod engine;
pub mod geometry;
pub mod ingest;
pub mod interval;
pub mod partition;

use std::fmt;

/// Identity of a tracked object. Stable across the tree, the queue, the
/// partition bands, and reported witnesses.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ObjectId(pub u32);

impl fmt::Display for ObjectId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}
