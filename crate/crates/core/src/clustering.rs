//! Clustering demonstration: points of a realization of `build_h3(m)`,
//! moved into general position, and the monochromatic components of their
//! Delaunay graph under every 3-coloring.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::construction::{realize_h3, BuildOptions, ConstructionError, Realization};
use crate::kernel::perturbation_radius;
use crate::ranges::{delaunay_graph, verify_realization, RangeError};
use crate::scalar::{int, log2_floor, pow2_neg, Rational};
use crate::Point;

/// Colorings are enumerated exhaustively, so the point count is capped.
pub const MAX_ENUMERATED_POINTS: usize = 12;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ClusterError {
    #[error(transparent)]
    Construction(#[from] ConstructionError),
    #[error(transparent)]
    Range(#[from] RangeError),
    #[error("could not reach general position after {0} attempts")]
    PerturbationFailed(usize),
    #[error("{0} points are too many to enumerate all 3-colorings")]
    TooManyPoints(usize),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ColoringCheck {
    pub colors: Vec<usize>,
    /// A monochromatic connected set of at least `m` points, if any.
    pub component: Option<Vec<usize>>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ClusterReport {
    pub m: usize,
    pub points: Vec<Point>,
    pub edges: Vec<(usize, usize)>,
    /// `e <= 3v - 6` (or fewer than three points).
    pub planar_edge_count: bool,
    pub checks: Vec<ColoringCheck>,
}

impl ClusterReport {
    pub fn all_colorings_have_component(&self) -> bool {
        self.checks.iter().all(|c| c.component.is_some())
    }
}

/// Move every point by less than `radius` on a dyadic grid, keeping the
/// realization's induced hypergraph, until no four points are cocircular.
pub fn perturb_to_general_position(
    r: &Realization,
    rng: &mut ChaCha8Rng,
    attempts: usize,
) -> Result<(Vec<Point>, Vec<(usize, usize)>), ClusterError> {
    let rho = perturbation_radius(&r.points, &r.circles()).map_err(ConstructionError::from)?;
    // offsets up to rho/2 per axis on a grid of 2^-20 rho
    let bits = 20;
    let unit: Rational = pow2_neg(bits - log2_floor(&rho));
    let span = 1i64 << (bits - 1);
    for _ in 0..attempts {
        let pts: Vec<Point> = r
            .points
            .iter()
            .map(|p| {
                let dx = int(rng.gen_range(-span + 1..span)) * &unit;
                let dy = int(rng.gen_range(-span + 1..span)) * &unit;
                Point::new(&p.x + &dx, &p.y + &dy)
            })
            .collect();
        let mut moved = r.clone();
        moved.points = pts.clone();
        if !verify_realization(&moved).is_ok() {
            continue;
        }
        match delaunay_graph(&pts) {
            Ok(edges) => return Ok((pts, edges)),
            Err(RangeError::DegeneratePosition(_)) => continue,
            Err(e) => return Err(e.into()),
        }
    }
    Err(ClusterError::PerturbationFailed(attempts))
}

fn monochromatic_component(n: usize, edges: &[(usize, usize)], colors: &[usize], m: usize) -> Option<Vec<usize>> {
    let mut comp: Vec<usize> = (0..n).collect();
    fn find(c: &mut [usize], x: usize) -> usize {
        let mut r = x;
        while c[r] != r {
            r = c[r];
        }
        c[x] = r;
        r
    }
    for &(a, b) in edges.iter().filter(|(a, b)| colors[*a] == colors[*b]) {
        let (ra, rb) = (find(&mut comp, a), find(&mut comp, b));
        comp[ra.max(rb)] = ra.min(rb);
    }
    let roots: Vec<usize> = (0..n).map(|v| find(&mut comp, v)).collect();
    (0..n)
        .map(|r| (0..n).filter(|&v| roots[v] == r).collect::<Vec<_>>())
        .find(|c| c.len() >= m.max(1))
}

/// Realize `build_h3(m)`, perturb it into general position and check every
/// 3-coloring of its points for a monochromatic Delaunay component of size
/// at least `m`.
pub fn cluster_demo(m: usize, gamma: &Rational, seed: u64, opts: &BuildOptions) -> Result<ClusterReport, ClusterError> {
    let r = realize_h3(m, gamma, opts)?;
    let n = r.points.len();
    if n > MAX_ENUMERATED_POINTS {
        return Err(ClusterError::TooManyPoints(n));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let (points, edges) = perturb_to_general_position(&r, &mut rng, 32)?;
    let total = 3usize.pow(n as u32);
    let checks = (0..total)
        .map(|code| {
            let colors: Vec<usize> = (0..n).map(|i| code / 3usize.pow(i as u32) % 3).collect();
            let component = monochromatic_component(n, &edges, &colors, m);
            ColoringCheck { colors, component }
        })
        .collect();
    let planar_edge_count = n < 3 || edges.len() <= 3 * n - 6;
    Ok(ClusterReport { m, points, edges, planar_edge_count, checks })
}
