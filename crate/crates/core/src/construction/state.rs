use crate::hypergraph::RootedTree;
use crate::kernel::{circles_close, side_of_circle, Side};
use crate::scalar::Rational;
use crate::{Circle, Point};

use super::realization::{circle_bits, point_bits};
use super::ConstructionError;

/// The three kinds of mutation the construction is allowed to make.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum AuditOp {
    /// A point moved by less than the current delta.
    Move { vertex: usize },
    /// `B(vertex)` added, delta-close to the disk it was grown from.
    AddDisk { vertex: usize },
    DecreaseDelta { from: Rational, to: Rational },
}

/// Mutable state of the tree realization loop.
#[derive(Clone, Debug)]
pub struct ConstructionState {
    pub tree: RootedTree,
    pub pos: Vec<Point>,
    pub fixed: Vec<bool>,
    /// `B(v)`, once created.
    pub disks: Vec<Option<Circle>>,
    pub delta: Rational,
    pub log: Vec<AuditOp>,
}

impl ConstructionState {
    pub fn new(tree: RootedTree, pos: Vec<Point>, delta: Rational) -> Self {
        let n = tree.len();
        ConstructionState { tree, pos, fixed: vec![false; n], disks: vec![None; n], delta, log: vec![] }
    }

    pub fn move_point(&mut self, v: usize, to: Point) -> Result<(), ConstructionError> {
        if !to.within(&self.pos[v], &self.delta) {
            return Err(ConstructionError::InvariantViolation {
                step: None,
                detail: format!("move of vertex {v} is not shorter than delta"),
            });
        }
        self.pos[v] = to;
        self.log.push(AuditOp::Move { vertex: v });
        Ok(())
    }

    pub fn add_disk(&mut self, v: usize, disk: Circle, grown_from: &Circle) -> Result<(), ConstructionError> {
        if self.disks[v].is_some() || !circles_close(&disk, grown_from, &self.delta) {
            return Err(ConstructionError::InvariantViolation {
                step: None,
                detail: format!("disk for vertex {v} is not delta-close to its host"),
            });
        }
        self.disks[v] = Some(disk);
        self.log.push(AuditOp::AddDisk { vertex: v });
        Ok(())
    }

    pub fn decrease_delta(&mut self, to: Rational) {
        assert!(to < self.delta && to > Rational::from_integer(0.into()), "delta must shrink and stay positive");
        let from = std::mem::replace(&mut self.delta, to.clone());
        self.log.push(AuditOp::DecreaseDelta { from, to });
    }

    /// Created disks paired with their vertex.
    pub fn built_disks(&self) -> impl Iterator<Item = (usize, &Circle)> {
        self.disks.iter().enumerate().filter_map(|(v, d)| d.as_ref().map(|d| (v, d)))
    }

    /// Lowest vertex on the root path of `v` (inclusive) whose disk exists.
    pub fn host_of(&self, v: usize) -> Option<usize> {
        let mut cur = Some(v);
        while let Some(u) = cur {
            if self.disks[u].is_some() {
                return Some(u);
            }
            cur = self.tree.parent(u);
        }
        None
    }

    pub fn max_bits(&self) -> u64 {
        let p = self.pos.iter().map(point_bits).max().unwrap_or(0);
        let d = self.built_disks().map(|(_, c)| circle_bits(c)).max().unwrap_or(0);
        p.max(d)
    }

    /// Check (P1)-(P3):
    /// every unfixed point lies on its host disk and outside all others;
    /// a vertex is fixed exactly when its disk exists;
    /// each disk contains exactly the fixed part of its root path.
    pub fn assert_state(&self, step: usize) -> Result<(), ConstructionError> {
        let fail = |detail: String| Err(ConstructionError::InvariantViolation { step: Some(step), detail });
        let n = self.tree.len();
        for v in 0..n {
            if self.fixed[v] != self.disks[v].is_some() {
                return fail(format!("(P2) vertex {v} fixed={} but disk present={}", self.fixed[v], self.disks[v].is_some()));
            }
        }
        for v in (0..n).filter(|&v| !self.fixed[v]) {
            let Some(h) = self.host_of(v) else {
                return fail(format!("(P1) vertex {v} has no host disk"));
            };
            for (w, d) in self.built_disks() {
                let side = side_of_circle(&self.pos[v], d);
                let want = if w == h { Side::On } else { Side::Outside };
                if side != want {
                    return fail(format!("(P1) vertex {v} is {side:?} disk of {w}, expected {want:?}"));
                }
            }
        }
        for (w, d) in self.built_disks() {
            let path = self.tree.path_from_root(w);
            for u in (0..n).filter(|&u| self.fixed[u]) {
                let side = side_of_circle(&self.pos[u], d);
                let want = if path.contains(&u) { Side::Inside } else { Side::Outside };
                if side != want {
                    return fail(format!("(P3) fixed vertex {u} is {side:?} disk of {w}, expected {want:?}"));
                }
            }
        }
        Ok(())
    }
}
