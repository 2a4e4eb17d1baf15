use serde::{Deserialize, Serialize};

use crate::hypergraph::Hypergraph;
use crate::scalar::{bit_size, Rational};
use crate::{Circle, Point};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum DiskRole {
    /// Realizes a sibling edge `S(v)`.
    Sibling,
    /// Realizes a root path `Q(v)`.
    Descendent,
    /// Enlarged rotated copy of an extended edge's disk.
    Copy,
    /// Disk carried over unchanged from an earlier stage.
    Inherited,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum RealizationKind {
    Tree,
    H2,
    H3,
    Extension,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RealizedDisk {
    pub circle: Circle,
    /// The hyperedge this disk realizes, as sorted vertex ids.
    pub edge: Vec<usize>,
    pub role: DiskRole,
    /// A boundary point outside the closure of every other disk, if known.
    pub exposed: Option<Point>,
}

/// Points and disks whose induced hypergraph is `target`: point `i` is
/// vertex `i` and disk `j` realizes `target.edges[j]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Realization {
    pub kind: RealizationKind,
    pub points: Vec<Point>,
    /// Positions the points were asked to stay close to (tree realizations).
    pub prescribed: Vec<Point>,
    pub disks: Vec<RealizedDisk>,
    pub anchor: Circle,
    pub gamma: Rational,
    pub target: Hypergraph,
}

impl Realization {
    pub fn circles(&self) -> Vec<Circle> {
        self.disks.iter().map(|d| d.circle.clone()).collect()
    }

    pub fn sibling_disks(&self) -> impl Iterator<Item = &RealizedDisk> {
        self.disks.iter().filter(|d| d.role == DiskRole::Sibling)
    }

    pub fn descendent_disks(&self) -> impl Iterator<Item = &RealizedDisk> {
        self.disks.iter().filter(|d| d.role == DiskRole::Descendent)
    }

    /// Largest numerator/denominator bit length over all coordinates.
    pub fn max_bits(&self) -> u64 {
        let mut m = 0;
        for p in &self.points {
            m = m.max(point_bits(p));
        }
        for d in &self.disks {
            m = m.max(circle_bits(&d.circle));
        }
        m
    }
}

pub fn point_bits(p: &Point) -> u64 {
    bit_size(&p.x).max(bit_size(&p.y))
}

pub fn circle_bits(c: &Circle) -> u64 {
    point_bits(&c.center).max(bit_size(&c.radius_sq)).max(point_bits(&c.base_point))
}
