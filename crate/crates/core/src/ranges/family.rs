use std::collections::BTreeMap;

use crate::kernel::{quadratic_sign, QuadPoint};
use crate::scalar::{Rational, Sign};
use crate::Point;

/// Open disk certifying one range. The center may carry a square root.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WitnessDisk {
    pub center: QuadPoint<Rational>,
    pub radius_sq: Rational,
}

impl WitnessDisk {
    pub fn rational(center: Point, radius_sq: Rational) -> Self {
        WitnessDisk { center: QuadPoint::from_rational(&center), radius_sq }
    }

    /// Sign of `|p - center|^2 - radius^2`.
    pub fn side_sign(&self, p: &Point) -> Sign {
        let d = self.center.dist_sq_to(p);
        quadratic_sign(&d.add_scalar(&-self.radius_sq.clone()))
    }

    /// Indices of the points strictly inside the open disk.
    pub fn range_of(&self, points: &[Point]) -> Vec<usize> {
        (0..points.len()).filter(|&i| self.side_sign(&points[i]) == Sign::Negative).collect()
    }

    /// `|center - o|^2 < radius^2`.
    pub fn contains(&self, o: &Point) -> bool {
        self.side_sign(o) == Sign::Negative
    }
}

/// Distinct ranges of a point set, each with one witness disk. Ranges are
/// sorted index lists, kept in lexicographic order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RangeFamily {
    pub points: Vec<Point>,
    pub ranges: Vec<Vec<usize>>,
    pub witnesses: Vec<WitnessDisk>,
}

impl RangeFamily {
    pub(crate) fn from_map(points: Vec<Point>, map: BTreeMap<Vec<usize>, WitnessDisk>) -> Self {
        let (ranges, witnesses) = map.into_iter().unzip();
        RangeFamily { points, ranges, witnesses }
    }

    pub fn len(&self) -> usize {
        self.ranges.len()
    }

    pub fn is_empty(&self) -> bool {
        self.ranges.is_empty()
    }

    pub fn contains_range(&self, r: &[usize]) -> bool {
        self.ranges.binary_search_by(|x| x.as_slice().cmp(r)).is_ok()
    }

    /// Index of the first witness that does not reproduce its range.
    pub fn check_witnesses(&self) -> Option<usize> {
        (0..self.ranges.len())
            .find(|&i| self.witnesses[i].range_of(&self.points) != self.ranges[i])
    }

    /// Ranges only, for set comparisons between families.
    pub fn range_set(&self) -> std::collections::BTreeSet<Vec<usize>> {
        self.ranges.iter().cloned().collect()
    }
}
