use std::collections::{BTreeMap, HashSet};

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive};
use rayon::prelude::*;

use crate::kernel::{disk_boundary_intersections, quadratic_sign, QuadPoint, Quadratic};
use crate::scalar::{int, log2_floor, pow2_neg, rational_to_f64, round_to_grid, sqrt_bounds, Rational, Sign};
use crate::Point;

use super::family::{RangeFamily, WitnessDisk};
use super::RangeError;

type Quad = Quadratic<Rational>;

fn check_input(points: &[Point], o: &Point) -> Result<(), RangeError> {
    let mut seen = HashSet::new();
    for (i, p) in points.iter().enumerate() {
        if p == o {
            return Err(RangeError::DegenerateInput(format!("point {i} coincides with the stabbing point")));
        }
        if !seen.insert(p) {
            return Err(RangeError::DegenerateInput(format!("point {i} repeats an earlier point")));
        }
    }
    Ok(())
}

fn to_f64(p: &Point) -> (f64, f64) {
    (rational_to_f64(&p.x), rational_to_f64(&p.y))
}

// Floating-point filter: the sign of `|x - q|^2 - 1` when it is decided by
// the f64 estimate, `None` when an exact evaluation is needed.
fn filtered_sign(x: (f64, f64), q: (f64, f64)) -> Option<Sign> {
    let (dx, dy) = (x.0 - q.0, x.1 - q.1);
    let v = dx * dx + dy * dy - 1.0;
    let scale = 1.0 + x.0.abs() + x.1.abs() + q.0.abs() + q.1.abs();
    let tol = 1e-12 * scale * scale;
    if v > tol {
        Some(Sign::Positive)
    } else if v < -tol {
        Some(Sign::Negative)
    } else {
        None
    }
}

fn unit_sign(x: &Point, xf: (f64, f64), q: &Point, qf: (f64, f64)) -> Sign {
    filtered_sign(xf, qf).unwrap_or_else(|| Sign::of(&(x.dist_sq(q) - int(1))))
}

fn unit_sign_quad(v: &QuadPoint<Rational>, vf: (f64, f64), q: &Point, qf: (f64, f64)) -> Sign {
    filtered_sign(vf, qf).unwrap_or_else(|| quadratic_sign(&v.dist_sq_to(q).add_scalar(&int(-1))))
}

struct Instance<'a> {
    points: &'a [Point],
    pf: Vec<(f64, f64)>,
    o: &'a Point,
    of: (f64, f64),
}

impl Instance<'_> {
    fn center(&self, i: usize) -> (&Point, (f64, f64)) {
        if i == self.points.len() {
            (self.o, self.of)
        } else {
            (&self.points[i], self.pf[i])
        }
    }

    /// Range of the unit disk around a rational `x`, if it is stabbed.
    fn range_at(&self, x: &Point) -> Option<Vec<usize>> {
        let xf = to_f64(x);
        if unit_sign(x, xf, self.o, self.of) != Sign::Negative {
            return None;
        }
        Some(
            (0..self.points.len())
                .filter(|&i| unit_sign(x, xf, &self.points[i], self.pf[i]) == Sign::Negative)
                .collect(),
        )
    }

    fn range_at_vertex(&self, v: &QuadPoint<Rational>, on: (usize, usize)) -> Option<Vec<usize>> {
        let n = self.points.len();
        if on.1 == n {
            // on the boundary of the stabbing region
            return None;
        }
        let vf = v.to_f64_lossy();
        if unit_sign_quad(v, vf, self.o, self.of) != Sign::Negative {
            return None;
        }
        Some(
            (0..n)
                .filter(|&i| i != on.0 && i != on.1)
                .filter(|&i| unit_sign_quad(v, vf, &self.points[i], self.pf[i]) == Sign::Negative)
                .collect(),
        )
    }
}

/// Vertex of the arrangement on one unit circle, with its half-angle
/// parameter `t = u_y / (1 + u_x)` (`None` for the direction `(-1, 0)`).
struct ArcVertex {
    theta: f64,
    t: Option<Quad>,
}

fn compare_params(a: &Option<Quad>, b: &Option<Quad>) -> std::cmp::Ordering {
    use std::cmp::Ordering::*;
    match (a, b) {
        (None, None) => Equal,
        (None, Some(_)) => Greater,
        (Some(_), None) => Less,
        (Some(x), Some(y)) => match crate::kernel::compare_quadratic(x, y) {
            Sign::Negative => Less,
            Sign::Zero => Equal,
            Sign::Positive => Greater,
        },
    }
}

const NEAR_PI: f64 = std::f64::consts::PI - 1e-6;

fn compare_vertices(a: &ArcVertex, b: &ArcVertex) -> std::cmp::Ordering {
    let safe = a.theta.abs() < NEAR_PI && b.theta.abs() < NEAR_PI && (a.theta - b.theta).abs() > 1e-9;
    if safe {
        a.theta.total_cmp(&b.theta)
    } else {
        compare_params(&a.t, &b.t)
    }
}

fn quad_bounds(q: &Quad, bits: u64) -> (Rational, Rational) {
    if q.is_rational() {
        return (q.a.clone(), q.a.clone());
    }
    let (lo, hi) = sqrt_bounds(&q.d, bits);
    let (x, y) = (&q.a + &q.b * &lo, &q.a + &q.b * &hi);
    if x <= y {
        (x, y)
    } else {
        (y, x)
    }
}

// Short dyadic strictly between two distinct parameters `a < b`.
fn rational_between(a: &Quad, b: &Quad) -> Rational {
    let mut bits = 64;
    loop {
        let (_, ahi) = quad_bounds(a, bits);
        let (blo, _) = quad_bounds(b, bits);
        if ahi < blo {
            let gap = &blo - &ahi;
            let h = pow2_neg(2 - log2_floor(&gap));
            let mid = (&ahi + &blo) / int(2);
            let t = round_to_grid(&mid, &h);
            debug_assert!(ahi < t && t < blo);
            return t;
        }
        bits *= 2;
    }
}

fn lower_rational(q: &Quad) -> Rational {
    quad_bounds(q, 32).0
}

fn upper_rational(q: &Quad) -> Rational {
    quad_bounds(q, 32).1
}

/// Point `p + u(t)` on the unit circle around `p`; `None` means `(-1, 0)`.
fn on_unit_circle(p: &Point, t: &Option<Rational>) -> Point {
    match t {
        None => Point::new(&p.x - int(1), p.y.clone()),
        Some(t) => {
            let t2 = t * t;
            let den = &t2 + int(1);
            Point::new(&p.x + &((int(1) - &t2) / &den), &p.y + &(int(2) * t / den))
        }
    }
}

/// One rational parameter inside each arc between consecutive distinct
/// vertices of a circle.
fn arc_samples(mut vs: Vec<ArcVertex>) -> Vec<Option<Rational>> {
    vs.sort_by(compare_vertices);
    let mut distinct: Vec<ArcVertex> = vec![];
    for v in vs {
        let dup = distinct.last().is_some_and(|l| {
            ((l.theta - v.theta).abs() <= 1e-9 || l.theta.abs() >= NEAR_PI) && compare_params(&l.t, &v.t).is_eq()
        });
        if !dup {
            distinct.push(v);
        }
    }
    let k = distinct.len();
    match k {
        0 => return vec![Some(int(0))],
        1 => {
            return vec![match &distinct[0].t {
                None => Some(int(0)),
                Some(_) => None,
            }]
        }
        _ => {}
    }
    let mut out = Vec::with_capacity(k);
    for i in 0..k - 1 {
        let (a, b) = (&distinct[i].t, &distinct[i + 1].t);
        out.push(Some(match (a, b) {
            (Some(a), Some(b)) => rational_between(a, b),
            (Some(a), None) => upper_rational(a) + int(1),
            _ => unreachable!("infinite parameter sorts last"),
        }));
    }
    // wrap-around arc through the direction (-1, 0)
    out.push(match &distinct[k - 1].t {
        None => Some(lower_rational(distinct[0].t.as_ref().expect("finite first")) - int(1)),
        Some(_) => None,
    });
    out
}

fn nudges(inst: &Instance, p: usize, x: &Point) -> Vec<Point> {
    let (pc, _) = inst.center(p);
    let xf = to_f64(x);
    let n = inst.points.len();
    let mut gap = f64::INFINITY;
    for q in (0..=n).filter(|&q| q != p) {
        let (_, qf) = inst.center(q);
        let d = ((xf.0 - qf.0).powi(2) + (xf.1 - qf.1).powi(2)).sqrt();
        gap = gap.min((d - 1.0).abs());
    }
    let u = x - pc;
    let make = |delta: &Rational| {
        let inner = pc + &u.scale(&(int(1) - delta));
        let outer = pc + &u.scale(&(int(1) + delta));
        [inner, outer]
    };
    if gap > 1e-8 {
        let e = (gap / 4.0).log2().floor().clamp(-60.0, -2.0) as i64;
        return make(&pow2_neg(-e)).to_vec();
    }
    // near-degenerate: certify the nudge exactly
    let sides: Vec<Sign> = (0..=n).filter(|&q| q != p).map(|q| Sign::of(&(x.dist_sq(inst.center(q).0) - int(1)))).collect();
    let mut k = 30;
    loop {
        let cand = make(&pow2_neg(k));
        let ok = cand.iter().all(|c| {
            (0..=n)
                .filter(|&q| q != p)
                .zip(&sides)
                .all(|(q, s)| Sign::of(&(c.dist_sq(inst.center(q).0) - int(1))) == *s)
        });
        if ok {
            return cand.to_vec();
        }
        k += 4;
    }
}

fn circle_vertices(inst: &Instance, p: usize, n: usize) -> Vec<(ArcVertex, QuadPoint<Rational>, (usize, usize))> {
    let (pc, _) = inst.center(p);
    let mut out = vec![];
    for q in (0..=n).filter(|&q| q != p) {
        let (qc, _) = inst.center(q);
        if pc.dist_sq(qc) > int(4) {
            continue;
        }
        let ints = disk_boundary_intersections(pc, &int(1), qc, &int(1)).expect("distinct centers");
        for v in ints.points {
            let ux = v.x.add_scalar(&-pc.x.clone());
            let uy = v.y.add_scalar(&-pc.y.clone());
            let (fx, fy) = (ux.to_f64_lossy(), uy.to_f64_lossy());
            let den = ux.add_scalar(&int(1));
            let t = if den.is_zero() { None } else { Some(uy.div(&den).expect("nonzero")) };
            out.push((ArcVertex { theta: fy.atan2(fx), t }, v, (p.min(q), p.max(q))));
        }
    }
    out
}

/// Every subset of `points` cut out by an open unit disk whose interior
/// contains `o`, each with a witness center.
///
/// Centers are sampled from every face of the arrangement of unit circles
/// around the points and `o`: one radial nudge to each side of a rational
/// point inside every arc, plus the arrangement vertices themselves.
pub fn stabbed_unit_disk_ranges(points: &[Point], o: &Point) -> Result<RangeFamily, RangeError> {
    check_input(points, o)?;
    let n = points.len();
    let inst = Instance { points, pf: points.iter().map(to_f64).collect(), o, of: to_f64(o) };

    let per_circle: Vec<Vec<(Vec<usize>, WitnessDisk)>> = (0..n)
        .into_par_iter()
        .map(|p| {
            let mut found = vec![];
            let verts = circle_vertices(&inst, p, n);
            for (_, v, on) in verts.iter().filter(|(_, _, on)| on.0 == p) {
                if let Some(r) = inst.range_at_vertex(v, *on) {
                    found.push((r, WitnessDisk { center: v.clone(), radius_sq: int(1) }));
                }
            }
            let arcs = arc_samples(verts.into_iter().map(|(a, _, _)| a).collect());
            for t in arcs {
                let x = on_unit_circle(&points[p], &t);
                for c in nudges(&inst, p, &x) {
                    if let Some(r) = inst.range_at(&c) {
                        found.push((r, WitnessDisk::rational(c, int(1))));
                    }
                }
            }
            found
        })
        .collect();

    let mut map: BTreeMap<Vec<usize>, WitnessDisk> = BTreeMap::new();
    for c in std::iter::once(o).chain(points.iter()) {
        if let Some(r) = inst.range_at(c) {
            map.entry(r).or_insert_with(|| WitnessDisk::rational(c.clone(), int(1)));
        }
    }
    for found in per_circle {
        for (r, w) in found {
            map.entry(r).or_insert(w);
        }
    }
    Ok(RangeFamily::from_map(points.to_vec(), map))
}

/// Ranges of unit disks centered at the grid points `o + h (i, j)` strictly
/// within distance one of `o`. Every range found is a genuine stabbed range;
/// small faces may be missed.
pub fn grid_oracle_ranges(points: &[Point], o: &Point, resolution: &Rational) -> RangeFamily {
    assert!(resolution.is_positive(), "grid resolution must be positive");
    // common denominator for o - p and h
    let mut den = resolution.denom().clone();
    let diffs: Vec<Point> = points.iter().map(|p| o - p).collect();
    for d in &diffs {
        den = num_integer::lcm(den, d.x.denom().clone());
        den = num_integer::lcm(den, d.y.denom().clone());
    }
    let scale = |x: &Rational| (x * Rational::from_integer(den.clone())).to_integer();
    let h = scale(resolution);
    let w: Vec<(BigInt, BigInt)> = diffs.iter().map(|d| (scale(&d.x), scale(&d.y))).collect();
    let l2 = &den * &den;
    // |h (i, j)| < 1  <=>  h^2 (i^2 + j^2) < den^2
    let reach = (&den / &h).to_i64().expect("grid too fine") + 1;
    let h2 = &h * &h;

    let fits = {
        let lim = BigInt::one() << 60u32;
        let big = |x: &BigInt| x.abs() >= lim;
        !(big(&den) || big(&(&h * BigInt::from(reach))) || w.iter().any(|(a, b)| big(a) || big(b)))
    };
    let rows: Vec<BTreeMap<Vec<usize>, (i64, i64)>> = (-reach..=reach)
        .into_par_iter()
        .map(|i| {
            let mut row = BTreeMap::new();
            let mut push = |j: i64, r: Vec<usize>| {
                row.entry(r).or_insert((i, j));
            };
            if fits {
                let (hh, l2s) = (h.to_i128().unwrap(), l2.to_i128().unwrap());
                let wi: Vec<(i128, i128)> = w.iter().map(|(a, b)| (a.to_i128().unwrap(), b.to_i128().unwrap())).collect();
                for j in -reach..=reach {
                    let (gi, gj) = (hh * i as i128, hh * j as i128);
                    if gi * gi + gj * gj >= l2s {
                        continue;
                    }
                    let r = (0..wi.len())
                        .filter(|&k| {
                            let (a, b) = (wi[k].0 + gi, wi[k].1 + gj);
                            a * a + b * b < l2s
                        })
                        .collect();
                    push(j, r);
                }
            } else {
                for j in -reach..=reach {
                    let (bi, bj) = (BigInt::from(i), BigInt::from(j));
                    if &h2 * (&bi * &bi + &bj * &bj) >= l2 {
                        continue;
                    }
                    let (gi, gj) = (&h * &bi, &h * &bj);
                    let r = (0..w.len())
                        .filter(|&k| {
                            let (a, b) = (&w[k].0 + &gi, &w[k].1 + &gj);
                            &a * &a + &b * &b < l2
                        })
                        .collect();
                    push(j, r);
                }
            }
            row
        })
        .collect();
    let mut map: BTreeMap<Vec<usize>, WitnessDisk> = BTreeMap::new();
    for row in rows {
        for (r, (i, j)) in row {
            map.entry(r).or_insert_with(|| {
                let c = Point::new(&o.x + &(resolution * int(i)), &o.y + &(resolution * int(j)));
                WitnessDisk::rational(c, int(1))
            });
        }
    }
    RangeFamily::from_map(points.to_vec(), map)
}
