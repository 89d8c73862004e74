//! Dynamic bounding-box tree over [`Box4`] values.
//!
//! Incremental insertion picks the sibling that minimizes the enlarged
//! 4D surface-area analogue (the sum of pairwise extent products), and
//! AVL-style rotations on the insertion path keep the height logarithmic.
//! Queries are exact on the stored boxes: internal bounds only prune.

use std::collections::HashMap;

use thiserror::Error;

use super::Box4;
use crate::ObjectId;

#[derive(Debug, Error, PartialEq)]
pub enum TreeError {
    #[error("object {0} is already in the tree")]
    DuplicateObject(ObjectId),
    #[error("object {0} is not in the tree")]
    UnknownObject(ObjectId),
}

const NULL: u32 = u32::MAX;

#[derive(Debug, Clone)]
struct Node {
    bounds: Box4,
    parent: u32,
    left: u32,
    right: u32,
    /// Leaves have height 0.
    height: i32,
    object: Option<ObjectId>,
}

impl Node {
    fn is_leaf(&self) -> bool {
        self.object.is_some()
    }
}

/// Balanced binary bounding-volume hierarchy over space-time boxes.
///
/// Single-writer: `&mut self` for mutation, shared reads are fine.
pub struct AabbTree4d {
    nodes: Vec<Node>,
    free: Vec<u32>,
    root: u32,
    leaves: HashMap<ObjectId, u32>,
    time_weight: f64,
}

impl Default for AabbTree4d {
    fn default() -> Self {
        Self::new()
    }
}

impl AabbTree4d {
    pub fn new() -> Self {
        Self::with_time_weight(1.0)
    }

    /// `time_weight` scales the time extent in the balancing cost metric.
    /// It has no effect on query results, only on tree shape.
    pub fn with_time_weight(time_weight: f64) -> Self {
        assert!(time_weight > 0.0 && time_weight.is_finite());
        Self {
            nodes: Vec::new(),
            free: Vec::new(),
            root: NULL,
            leaves: HashMap::new(),
            time_weight,
        }
    }

    /// Number of stored objects.
    pub fn len(&self) -> usize {
        self.leaves.len()
    }

    pub fn is_empty(&self) -> bool {
        self.leaves.is_empty()
    }

    /// Root height; -1 when empty. Leaves have height 0.
    pub fn height(&self) -> i32 {
        if self.root == NULL {
            -1
        } else {
            self.nodes[self.root as usize].height
        }
    }

    /// The box currently stored for `obj`, if present.
    pub fn stored_box(&self, obj: ObjectId) -> Option<Box4> {
        self.leaves
            .get(&obj)
            .map(|&leaf| self.nodes[leaf as usize].bounds)
    }

    pub fn insert(&mut self, obj: ObjectId, bounds: Box4) -> Result<(), TreeError> {
        if self.leaves.contains_key(&obj) {
            return Err(TreeError::DuplicateObject(obj));
        }
        let leaf = self.alloc(bounds, Some(obj));
        self.leaves.insert(obj, leaf);
        self.insert_leaf(leaf);
        Ok(())
    }

    pub fn remove(&mut self, obj: ObjectId) -> Result<(), TreeError> {
        let leaf = self
            .leaves
            .remove(&obj)
            .ok_or(TreeError::UnknownObject(obj))?;
        self.remove_leaf(leaf);
        self.dealloc(leaf);
        Ok(())
    }

    /// Re-bound an object. Behaves like remove-then-insert; when the new
    /// box is contained in the stored one, only the leaf is rewritten and
    /// ancestor bounds are left (validly) loose.
    pub fn update(&mut self, obj: ObjectId, bounds: Box4) -> Result<(), TreeError> {
        let leaf = *self
            .leaves
            .get(&obj)
            .ok_or(TreeError::UnknownObject(obj))?;
        let node = &mut self.nodes[leaf as usize];
        if node.bounds.contains(&bounds) {
            node.bounds = bounds;
            return Ok(());
        }
        node.bounds = bounds;
        self.remove_leaf(leaf);
        self.insert_leaf(leaf);
        Ok(())
    }

    /// All stored objects whose box overlaps `bounds`, in traversal order.
    pub fn query(&self, bounds: &Box4) -> Vec<ObjectId> {
        let mut out = Vec::new();
        self.query_into(bounds, &mut out);
        out
    }

    /// As [`AabbTree4d::query`], appending into a caller-owned buffer.
    pub fn query_into(&self, bounds: &Box4, out: &mut Vec<ObjectId>) {
        if self.root == NULL {
            return;
        }
        let mut stack = vec![self.root];
        while let Some(idx) = stack.pop() {
            let node = &self.nodes[idx as usize];
            if !node.bounds.intersects(bounds) {
                continue;
            }
            match node.object {
                Some(obj) => out.push(obj),
                None => {
                    stack.push(node.left);
                    stack.push(node.right);
                }
            }
        }
    }

    fn measure(&self, b: &Box4) -> f64 {
        let e = b.extents(self.time_weight);
        e[0] * e[1] + e[0] * e[2] + e[0] * e[3] + e[1] * e[2] + e[1] * e[3] + e[2] * e[3]
    }

    fn alloc(&mut self, bounds: Box4, object: Option<ObjectId>) -> u32 {
        let node = Node {
            bounds,
            parent: NULL,
            left: NULL,
            right: NULL,
            height: 0,
            object,
        };
        match self.free.pop() {
            Some(idx) => {
                self.nodes[idx as usize] = node;
                idx
            }
            None => {
                self.nodes.push(node);
                (self.nodes.len() - 1) as u32
            }
        }
    }

    fn dealloc(&mut self, idx: u32) {
        self.free.push(idx);
    }

    fn insert_leaf(&mut self, leaf: u32) {
        if self.root == NULL {
            self.root = leaf;
            self.nodes[leaf as usize].parent = NULL;
            return;
        }

        // Branch-and-bound descent toward the cheapest sibling.
        let leaf_bounds = self.nodes[leaf as usize].bounds;
        let mut idx = self.root;
        while !self.nodes[idx as usize].is_leaf() {
            let node = &self.nodes[idx as usize];
            let (left, right) = (node.left, node.right);
            let area = self.measure(&node.bounds);
            let combined = self.measure(&node.bounds.union(&leaf_bounds));
            let cost_here = 2.0 * combined;
            let inherited = 2.0 * (combined - area);
            let child_cost = |tree: &Self, child: u32| {
                let c = &tree.nodes[child as usize];
                let enlarged = tree.measure(&c.bounds.union(&leaf_bounds));
                if c.is_leaf() {
                    enlarged + inherited
                } else {
                    enlarged - tree.measure(&c.bounds) + inherited
                }
            };
            let cost_left = child_cost(self, left);
            let cost_right = child_cost(self, right);
            if cost_here < cost_left && cost_here < cost_right {
                break;
            }
            idx = if cost_left < cost_right { left } else { right };
        }
        let sibling = idx;

        // Splice a fresh parent above the chosen sibling.
        let old_parent = self.nodes[sibling as usize].parent;
        let union = self.nodes[sibling as usize].bounds.union(&leaf_bounds);
        let new_parent = self.alloc(union, None);
        let sibling_height = self.nodes[sibling as usize].height;
        {
            let p = &mut self.nodes[new_parent as usize];
            p.parent = old_parent;
            p.left = sibling;
            p.right = leaf;
            p.height = sibling_height + 1;
        }
        self.nodes[sibling as usize].parent = new_parent;
        self.nodes[leaf as usize].parent = new_parent;
        if old_parent == NULL {
            self.root = new_parent;
        } else if self.nodes[old_parent as usize].left == sibling {
            self.nodes[old_parent as usize].left = new_parent;
        } else {
            self.nodes[old_parent as usize].right = new_parent;
        }

        self.refit_upward(new_parent);
    }

    fn remove_leaf(&mut self, leaf: u32) {
        if leaf == self.root {
            self.root = NULL;
            return;
        }
        let parent = self.nodes[leaf as usize].parent;
        let grandparent = self.nodes[parent as usize].parent;
        let sibling = if self.nodes[parent as usize].left == leaf {
            self.nodes[parent as usize].right
        } else {
            self.nodes[parent as usize].left
        };

        if grandparent == NULL {
            self.root = sibling;
            self.nodes[sibling as usize].parent = NULL;
            self.dealloc(parent);
        } else {
            if self.nodes[grandparent as usize].left == parent {
                self.nodes[grandparent as usize].left = sibling;
            } else {
                self.nodes[grandparent as usize].right = sibling;
            }
            self.nodes[sibling as usize].parent = grandparent;
            self.dealloc(parent);
            self.refit_upward(grandparent);
        }
    }

    /// Walk to the root restoring bounds, heights, and balance.
    fn refit_upward(&mut self, start: u32) {
        let mut idx = start;
        while idx != NULL {
            idx = self.balance(idx);
            let (left, right) = {
                let n = &self.nodes[idx as usize];
                (n.left, n.right)
            };
            let height = 1 + self.nodes[left as usize]
                .height
                .max(self.nodes[right as usize].height);
            let bounds = self.nodes[left as usize]
                .bounds
                .union(&self.nodes[right as usize].bounds);
            let node = &mut self.nodes[idx as usize];
            node.height = height;
            node.bounds = bounds;
            idx = node.parent;
        }
    }

    /// Single AVL rotation at `i_a` if its children differ in height by
    /// more than one. Returns the node now occupying that position.
    fn balance(&mut self, i_a: u32) -> u32 {
        let a = i_a as usize;
        if self.nodes[a].is_leaf() || self.nodes[a].height < 2 {
            return i_a;
        }
        let i_b = self.nodes[a].left;
        let i_c = self.nodes[a].right;
        let diff = self.nodes[i_c as usize].height - self.nodes[i_b as usize].height;
        if diff > 1 {
            self.rotate_up(i_a, i_c, i_b)
        } else if diff < -1 {
            self.rotate_up(i_a, i_b, i_c)
        } else {
            i_a
        }
    }

    /// Promote child `i_up` above `i_a`; `i_keep` is the other child.
    fn rotate_up(&mut self, i_a: u32, i_up: u32, i_keep: u32) -> u32 {
        let i_f = self.nodes[i_up as usize].left;
        let i_g = self.nodes[i_up as usize].right;

        self.nodes[i_up as usize].left = i_a;
        self.nodes[i_up as usize].parent = self.nodes[i_a as usize].parent;
        self.nodes[i_a as usize].parent = i_up;

        let up_parent = self.nodes[i_up as usize].parent;
        if up_parent == NULL {
            self.root = i_up;
        } else if self.nodes[up_parent as usize].left == i_a {
            self.nodes[up_parent as usize].left = i_up;
        } else {
            self.nodes[up_parent as usize].right = i_up;
        }

        // The taller grandchild stays under the promoted node.
        let (stay, swap) = if self.nodes[i_f as usize].height >= self.nodes[i_g as usize].height {
            (i_f, i_g)
        } else {
            (i_g, i_f)
        };
        self.nodes[i_up as usize].right = stay;
        self.nodes[i_a as usize].left = i_keep;
        self.nodes[i_a as usize].right = swap;
        self.nodes[swap as usize].parent = i_a;
        self.nodes[i_keep as usize].parent = i_a;

        let refit = |nodes: &mut Vec<Node>, idx: u32| {
            let (l, r) = (nodes[idx as usize].left, nodes[idx as usize].right);
            nodes[idx as usize].height =
                1 + nodes[l as usize].height.max(nodes[r as usize].height);
            nodes[idx as usize].bounds =
                nodes[l as usize].bounds.union(&nodes[r as usize].bounds);
        };
        refit(&mut self.nodes, i_a);
        refit(&mut self.nodes, i_up);
        i_up
    }

    /// Walks the whole tree asserting structural invariants: child/parent
    /// wiring, bounds containment in all four dimensions, height bookkeeping,
    /// and that every tracked object sits in exactly one leaf.
    pub fn check_invariants(&self) {
        if self.root == NULL {
            assert!(self.leaves.is_empty());
            return;
        }
        assert_eq!(self.nodes[self.root as usize].parent, NULL);
        let mut seen = 0usize;
        let mut stack = vec![self.root];
        while let Some(idx) = stack.pop() {
            let node = &self.nodes[idx as usize];
            match node.object {
                Some(obj) => {
                    assert_eq!(node.height, 0, "leaf with nonzero height");
                    assert_eq!(self.leaves.get(&obj), Some(&idx), "leaf map out of sync");
                    seen += 1;
                }
                None => {
                    let (l, r) = (node.left as usize, node.right as usize);
                    assert_eq!(self.nodes[l].parent, idx);
                    assert_eq!(self.nodes[r].parent, idx);
                    assert!(
                        node.bounds.contains(&self.nodes[l].bounds)
                            && node.bounds.contains(&self.nodes[r].bounds),
                        "parent bounds do not contain children"
                    );
                    assert_eq!(
                        node.height,
                        1 + self.nodes[l].height.max(self.nodes[r].height)
                    );
                    stack.push(node.left);
                    stack.push(node.right);
                }
            }
        }
        assert_eq!(seen, self.leaves.len(), "leaf count mismatch");
    }
}
