use std::collections::BTreeSet;

use crate::construction::Realization;
use crate::hypergraph::Hypergraph;
use crate::kernel::{side_of_circle, Side};
use crate::{Circle, Point};

use super::RangeError;

/// One edge per circle: the indices of the points inside it. Edges may be
/// empty here, unlike hypergraphs built combinatorially.
pub fn induced_hypergraph(points: &[Point], circles: &[Circle]) -> Result<Hypergraph, RangeError> {
    let mut edges = Vec::with_capacity(circles.len());
    for c in circles {
        let mut e = vec![];
        for (i, p) in points.iter().enumerate() {
            match side_of_circle(p, c) {
                Side::Inside => e.push(i),
                Side::On => return Err(RangeError::PointOnBoundary),
                Side::Outside => {}
            }
        }
        edges.push(e);
    }
    Ok(Hypergraph { n: points.len(), edges, star: None })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum VerifyReport {
    Ok,
    Mismatch {
        disk: usize,
        expected: Vec<usize>,
        found: Vec<usize>,
        symmetric_difference: Vec<usize>,
    },
    PointOnBoundary {
        disk: usize,
        point: usize,
    },
    Malformed(String),
}

impl VerifyReport {
    pub fn is_ok(&self) -> bool {
        *self == VerifyReport::Ok
    }
}

/// Recompute every disk's point set and compare it with its edge of the
/// target, stopping at the first disagreement.
pub fn verify_realization(r: &Realization) -> VerifyReport {
    if r.points.len() != r.target.n || r.disks.len() != r.target.edges.len() {
        return VerifyReport::Malformed("point or disk count differs from the target".into());
    }
    for (j, d) in r.disks.iter().enumerate() {
        let mut found = vec![];
        for (i, p) in r.points.iter().enumerate() {
            match side_of_circle(p, &d.circle) {
                Side::Inside => found.push(i),
                Side::On => return VerifyReport::PointOnBoundary { disk: j, point: i },
                Side::Outside => {}
            }
        }
        let expected = r.target.edges[j].clone();
        if found != expected || d.edge != expected {
            let a: BTreeSet<usize> = found.iter().copied().collect();
            let b: BTreeSet<usize> = expected.iter().copied().collect();
            return VerifyReport::Mismatch {
                disk: j,
                expected,
                found,
                symmetric_difference: a.symmetric_difference(&b).copied().collect(),
            };
        }
    }
    VerifyReport::Ok
}
