use crate::kernel::{disk_boundary_intersections, KernelError, QuadPoint, Quadratic};
use crate::ranges::RangeFamily;
use crate::scalar::{int, Rational, Sign};
use crate::{Circle, Point};

use super::PolychromaticError;

/// Partition of the points into four quarters around `origin`, cut by the
/// line along `axis` and the line perpendicular to it.
///
/// Quarter `i` covers the half-open angular interval `[i, i + 1) * 90°`
/// measured counterclockwise from `axis`, so a point on a dividing ray goes
/// to the quarter that starts there.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QuarterDecomposition {
    pub origin: Point,
    pub axis: Point,
    pub parts: [Vec<usize>; 4],
    pub quarter_of: Vec<usize>,
}

fn quarter_from_signs(s: Sign, t: Sign) -> usize {
    use Sign::*;
    match (s, t) {
        (Positive, Zero | Positive) => 0,
        (Zero | Negative, Positive) => 1,
        (Negative, Zero | Negative) => 2,
        (Zero | Positive, Negative) => 3,
        (Zero, Zero) => unreachable!("origin has no quarter"),
    }
}

/// Quarter of the nonzero vector `v` relative to `axis`.
pub fn quarter_of_vector(v: &Point, axis: &Point) -> usize {
    let s = Sign::of(&v.dot(axis));
    let t = Sign::of(&axis.cross(v));
    quarter_from_signs(s, t)
}

fn quarter_of_quad(v: &QuadPoint<Rational>, axis: &Point) -> usize {
    let s = v.x.mul_scalar(&axis.x).add(&v.y.mul_scalar(&axis.y)).sign();
    let t = v.y.mul_scalar(&axis.x).sub(&v.x.mul_scalar(&axis.y)).sign();
    quarter_from_signs(s, t)
}

pub fn quarter_partition(points: &[Point], o: &Point, axis: &Point) -> Result<QuarterDecomposition, PolychromaticError> {
    if *axis == Point::origin() {
        return Err(PolychromaticError::ZeroAxis);
    }
    let mut parts: [Vec<usize>; 4] = Default::default();
    let mut quarter_of = Vec::with_capacity(points.len());
    for (i, p) in points.iter().enumerate() {
        if p == o {
            return Err(PolychromaticError::OriginInPointSet(i));
        }
        let q = quarter_of_vector(&(p - o), axis);
        parts[q].push(i);
        quarter_of.push(q);
    }
    Ok(QuarterDecomposition { origin: o.clone(), axis: axis.clone(), parts, quarter_of })
}

/// For each quarter, the distinct intersections of the ranges with it.
pub fn quarter_traces(decomp: &QuarterDecomposition, family: &RangeFamily) -> [Vec<Vec<usize>>; 4] {
    let mut out: [std::collections::BTreeSet<Vec<usize>>; 4] = Default::default();
    for r in &family.ranges {
        let mut split: [Vec<usize>; 4] = Default::default();
        for &i in r {
            split[decomp.quarter_of[i]].push(i);
        }
        for (q, s) in split.into_iter().enumerate() {
            out[q].insert(s);
        }
    }
    out.map(|s| s.into_iter().collect())
}

/// Number of boundary intersection points of the two circles in each
/// quarter of `decomp`. A tangency counts once.
pub fn quarter_crossing_count(
    c1: &Circle,
    c2: &Circle,
    decomp: &QuarterDecomposition,
) -> Result<[usize; 4], PolychromaticError> {
    let ints = disk_boundary_intersections(&c1.center, &c1.radius_sq, &c2.center, &c2.radius_sq).map_err(|e| match e {
        KernelError::IdenticalCircles => PolychromaticError::IdenticalCircles,
        other => PolychromaticError::Kernel(other),
    })?;
    let mut counts = [0usize; 4];
    let o = &decomp.origin;
    for v in &ints.points {
        let rel = QuadPoint {
            x: v.x.add_scalar(&-o.x.clone()),
            y: v.y.add_scalar(&-o.y.clone()),
        };
        if rel.x == Quadratic::rational(int(0)) && rel.y == Quadratic::rational(int(0)) {
            return Err(PolychromaticError::CrossingAtOrigin);
        }
        counts[quarter_of_quad(&rel, &decomp.axis)] += 1;
    }
    Ok(counts)
}
