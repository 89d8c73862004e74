//! Indexed binary min-heap over `(t_max, object)` pairs.
//!
//! The detection loop repeatedly needs the object whose time interval ends
//! soonest, and adjusts keys every time an interval is grown or halved, so
//! the heap tracks element positions to support O(log n) re-keying. Ties
//! break toward the smallest object id, which keeps runs deterministic.

use std::collections::HashMap;

use crate::ObjectId;

#[derive(Debug, Default)]
pub struct MaxTimeQueue {
    heap: Vec<(u64, ObjectId)>,
    pos: HashMap<ObjectId, usize>,
}

impl MaxTimeQueue {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn len(&self) -> usize {
        self.heap.len()
    }

    pub fn is_empty(&self) -> bool {
        self.heap.is_empty()
    }

    pub fn contains(&self, id: ObjectId) -> bool {
        self.pos.contains_key(&id)
    }

    /// The entry with the smallest `(key, id)`.
    pub fn peek(&self) -> Option<(u64, ObjectId)> {
        self.heap.first().copied()
    }

    /// Panics if `id` is already queued: every tracked object must appear
    /// exactly once.
    pub fn push(&mut self, id: ObjectId, key: u64) {
        assert!(
            !self.pos.contains_key(&id),
            "object {id} already in the queue"
        );
        self.heap.push((key, id));
        let i = self.heap.len() - 1;
        self.pos.insert(id, i);
        self.sift_up(i);
    }

    /// Re-key an existing entry. Panics if `id` is not queued.
    pub fn update(&mut self, id: ObjectId, key: u64) {
        let i = *self.pos.get(&id).expect("object not in the queue");
        let old = self.heap[i].0;
        self.heap[i].0 = key;
        if key < old {
            self.sift_up(i);
        } else {
            self.sift_down(i);
        }
    }

    pub fn remove(&mut self, id: ObjectId) {
        let i = match self.pos.remove(&id) {
            Some(i) => i,
            None => return,
        };
        let last = self.heap.len() - 1;
        if i != last {
            self.heap.swap(i, last);
            let moved = self.heap[i].1;
            self.pos.insert(moved, i);
        }
        self.heap.pop();
        if i < self.heap.len() {
            self.sift_up(i);
            self.sift_down(i);
        }
    }

    fn sift_up(&mut self, mut i: usize) {
        while i > 0 {
            let parent = (i - 1) / 2;
            if self.heap[i] < self.heap[parent] {
                self.swap(i, parent);
                i = parent;
            } else {
                break;
            }
        }
    }

    fn sift_down(&mut self, mut i: usize) {
        loop {
            let mut best = i;
            for child in [2 * i + 1, 2 * i + 2] {
                if child < self.heap.len() && self.heap[child] < self.heap[best] {
                    best = child;
                }
            }
            if best == i {
                break;
            }
            self.swap(i, best);
            i = best;
        }
    }

    fn swap(&mut self, a: usize, b: usize) {
        self.heap.swap(a, b);
        self.pos.insert(self.heap[a].1, a);
        self.pos.insert(self.heap[b].1, b);
    }
}
