//! Axis-aligned boxes in 3D space and in space-time, plus the dynamic
//! bounding-box tree over the 4D boxes.
//!
//! All overlap tests use closed-set semantics: boxes touching at a face,
//! edge, or corner count as intersecting. Degenerate boxes (zero extent in
//! any axis, including instant time intervals) are legal everywhere.

mod tree;

pub use tree::{AabbTree4d, TreeError};

use crate::interval::Interval;

pub type Vec3 = [f64; 3];

/// Closed axis-aligned box in 3D space (meters).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Box3 {
    min: Vec3,
    max: Vec3,
}

impl Box3 {
    /// Panics if `min[k] > max[k]` on any axis.
    pub fn new(min: Vec3, max: Vec3) -> Self {
        for k in 0..3 {
            assert!(
                min[k] <= max[k],
                "inverted box on axis {k}: [{}, {}]",
                min[k],
                max[k]
            );
        }
        Self { min, max }
    }

    /// Degenerate box holding a single point.
    pub fn point(p: Vec3) -> Self {
        Self { min: p, max: p }
    }

    /// Cube with the given center and half-edge.
    pub fn cube(center: Vec3, half_edge: f64) -> Self {
        assert!(half_edge >= 0.0);
        let mut min = center;
        let mut max = center;
        for k in 0..3 {
            min[k] -= half_edge;
            max[k] += half_edge;
        }
        Self { min, max }
    }

    pub fn from_coords(x: Interval, y: Interval, z: Interval) -> Self {
        Self {
            min: [x.lo(), y.lo(), z.lo()],
            max: [x.hi(), y.hi(), z.hi()],
        }
    }

    pub fn min(&self) -> Vec3 {
        self.min
    }

    pub fn max(&self) -> Vec3 {
        self.max
    }

    /// Box grown by `r` on every face.
    pub fn inflate(&self, r: f64) -> Self {
        assert!(r >= 0.0);
        let mut b = *self;
        for k in 0..3 {
            b.min[k] -= r;
            b.max[k] += r;
        }
        b
    }

    pub fn intersects(&self, other: &Box3) -> bool {
        (0..3).all(|k| self.min[k] <= other.max[k] && other.min[k] <= self.max[k])
    }

    pub fn contains_point(&self, p: Vec3) -> bool {
        (0..3).all(|k| self.min[k] <= p[k] && p[k] <= self.max[k])
    }

    pub fn contains_box(&self, other: &Box3) -> bool {
        (0..3).all(|k| self.min[k] <= other.min[k] && other.max[k] <= self.max[k])
    }

    pub fn union(&self, other: &Box3) -> Self {
        let mut min = self.min;
        let mut max = self.max;
        for k in 0..3 {
            min[k] = min[k].min(other.min[k]);
            max[k] = max[k].max(other.max[k]);
        }
        Self { min, max }
    }
}

/// Closed box in space-time: a [`Box3`] over an interval of seconds.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Box4 {
    pub space: Box3,
    pub time: Interval,
}

impl Box4 {
    pub fn new(space: Box3, time: Interval) -> Self {
        Self { space, time }
    }

    /// Overlap requires intersection in all four dimensions.
    pub fn intersects(&self, other: &Box4) -> bool {
        self.time.overlaps(other.time) && self.space.intersects(&other.space)
    }

    pub fn contains(&self, other: &Box4) -> bool {
        self.time.contains_interval(other.time) && self.space.contains_box(&other.space)
    }

    pub fn union(&self, other: &Box4) -> Self {
        Self {
            space: self.space.union(&other.space),
            time: self.time.hull(other.time),
        }
    }

    /// Extent along each of the four axes, with time scaled by `time_weight`.
    pub(crate) fn extents(&self, time_weight: f64) -> [f64; 4] {
        [
            self.space.max[0] - self.space.min[0],
            self.space.max[1] - self.space.min[1],
            self.space.max[2] - self.space.min[2],
            self.time.width() * time_weight,
        ]
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn closed_overlap_at_shared_face() {
        let a = Box3::new([0.0, 0.0, 0.0], [1.0, 1.0, 1.0]);
        let b = Box3::new([1.0, 0.0, 0.0], [2.0, 1.0, 1.0]);
        assert!(a.intersects(&b));
        let t = Interval::new(0.0, 1.0);
        assert!(Box4::new(a, t).intersects(&Box4::new(b, t)));
        // Disjoint in time alone is enough to reject.
        assert!(!Box4::new(a, t).intersects(&Box4::new(b, Interval::new(2.0, 3.0))));
        // Touching time endpoints still count.
        assert!(Box4::new(a, t).intersects(&Box4::new(b, Interval::new(1.0, 3.0))));
    }

    #[test]
    fn degenerate_boxes() {
        let p = Box3::point([1.0, 2.0, 3.0]);
        assert!(p.intersects(&p));
        assert!(p.contains_point([1.0, 2.0, 3.0]));
        let c = Box3::cube([0.0, 0.0, 0.0], 0.0);
        assert_eq!(c.min(), c.max());
    }

    #[test]
    fn union_and_containment() {
        let a = Box3::new([0.0, 0.0, 0.0], [1.0, 1.0, 1.0]);
        let b = Box3::new([-1.0, 0.5, 0.0], [0.5, 2.0, 0.5]);
        let u = a.union(&b);
        assert!(u.contains_box(&a) && u.contains_box(&b));
        assert_eq!(u.min(), [-1.0, 0.0, 0.0]);
        assert_eq!(u.max(), [1.0, 2.0, 1.0]);
    }
}
