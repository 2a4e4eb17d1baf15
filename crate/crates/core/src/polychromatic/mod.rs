//! Polychromatic colorings of points with respect to stabbed unit disks:
//! the quarter decomposition, per-quarter colorings of the traces and an
//! exhaustive certifier.

mod quarters;
mod solver;

pub use quarters::{quarter_crossing_count, quarter_of_vector, quarter_partition, quarter_traces, QuarterDecomposition};
pub use solver::{polychromatic_color, BacktrackingSolver, PolychromaticSolver};

use crate::hypergraph::Coloring;
use crate::kernel::KernelError;
use crate::ranges::{stabbed_unit_disk_ranges, RangeError, RangeFamily, WitnessDisk};
use crate::scalar::int;
use crate::Point;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum PolychromaticError {
    #[error("point {0} coincides with the stabbing point")]
    OriginInPointSet(usize),
    #[error("axis direction must be nonzero")]
    ZeroAxis,
    #[error("number of colors must be positive")]
    InvalidK,
    #[error("no polychromatic coloring exists for this system")]
    NoColoringFound,
    #[error("circles are identical")]
    IdenticalCircles,
    #[error("circle intersection lies on the stabbing point")]
    CrossingAtOrigin,
    #[error("coloring has {found} entries for {expected} points")]
    ColoringLength { expected: usize, found: usize },
    #[error(transparent)]
    Range(#[from] RangeError),
    #[error(transparent)]
    Kernel(#[from] KernelError),
}

/// Smallest range size that must see all `k` colors: `4 (2k - 2) + 1`.
pub fn disk_threshold(k: usize) -> usize {
    8 * k.max(1) - 7
}

/// Smallest quarter trace size that the per-quarter coloring must cover.
pub fn quarter_threshold(k: usize) -> usize {
    2 * k.max(1) - 1
}

pub fn standard_axis() -> Point {
    Point::new(int(1), int(0))
}

/// A range of at least the threshold size missing some color.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Violation {
    pub range: Vec<usize>,
    pub witness: WitnessDisk,
    pub missing_colors: Vec<usize>,
}

/// k-coloring in which every stabbed unit disk holding at least `8k - 7`
/// points sees all colors.
pub fn color_stabbed_unit_disks(points: &[Point], o: &Point, k: usize) -> Result<Coloring, PolychromaticError> {
    let family = stabbed_unit_disk_ranges(points, o)?;
    color_with_family(points, o, &standard_axis(), k, &family)
}

/// Same as [`color_stabbed_unit_disks`] with a precomputed range family and
/// a chosen axis for the quarters.
pub fn color_with_family(
    points: &[Point],
    o: &Point,
    axis: &Point,
    k: usize,
    family: &RangeFamily,
) -> Result<Coloring, PolychromaticError> {
    if k == 0 {
        return Err(PolychromaticError::InvalidK);
    }
    let decomp = quarter_partition(points, o, axis)?;
    let traces = quarter_traces(&decomp, family);
    let mut colors = vec![0; points.len()];
    for (part, system) in decomp.parts.iter().zip(&traces) {
        let c = polychromatic_color(part, system, k, quarter_threshold(k))?;
        for (&i, &col) in part.iter().zip(&c.colors) {
            colors[i] = col;
        }
    }
    Ok(Coloring { k, colors })
}

/// Every stabbed range with at least `threshold` points that misses a color.
pub fn verify_polychromatic(
    points: &[Point],
    o: &Point,
    k: usize,
    coloring: &Coloring,
    threshold: usize,
) -> Result<Vec<Violation>, PolychromaticError> {
    let family = stabbed_unit_disk_ranges(points, o)?;
    verify_with_family(&family, o, k, coloring, threshold)
}

pub fn verify_with_family(
    family: &RangeFamily,
    o: &Point,
    k: usize,
    coloring: &Coloring,
    threshold: usize,
) -> Result<Vec<Violation>, PolychromaticError> {
    let n = family.points.len();
    if coloring.colors.len() != n {
        return Err(PolychromaticError::ColoringLength { expected: n, found: coloring.colors.len() });
    }
    let decomp = quarter_partition(&family.points, o, &standard_axis())?;
    let mut out = vec![];
    for (r, w) in family.ranges.iter().zip(&family.witnesses) {
        if r.len() < threshold {
            continue;
        }
        if r.len() >= disk_threshold(k) {
            let mut per = [0usize; 4];
            for &i in r {
                per[decomp.quarter_of[i]] += 1;
            }
            assert!(per.iter().any(|&c| c >= quarter_threshold(k)), "pigeonhole bound violated");
        }
        let mut seen = vec![false; k];
        for &i in r {
            if let Some(s) = seen.get_mut(coloring.colors[i]) {
                *s = true;
            }
        }
        let missing: Vec<usize> = (0..k).filter(|&c| !seen[c]).collect();
        if !missing.is_empty() {
            out.push(Violation { range: r.clone(), witness: w.clone(), missing_colors: missing });
        }
    }
    Ok(out)
}
