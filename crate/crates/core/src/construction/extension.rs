use log::{debug, info};
use num_traits::One;

use crate::hypergraph::{
    complete_mary_tree, siblings_first_order, single_edge_hypergraph, tree_hypergraph, Hypergraph, RootedTree,
};
use crate::kernel::{perturbation_radius, second_intersection, side_of_circle, Side};
use crate::scalar::{floor_pow2, int, log2_floor, pow2_neg, rat, round_to_grid, sqrt_bounds, sqrt_gt_sum, Rational};
use crate::{Circle, Point};

use super::realization::{DiskRole, Realization, RealizationKind, RealizedDisk};
use super::tree::realize_tree;
use super::{BuildOptions, ConstructionError};

fn unit_circle() -> Circle {
    Circle::through(Point::origin(), Point::new(int(1), int(0))).expect("unit circle")
}

/// `G_1` realized by the origin inside the unit disk; `(1, 0)` is exposed.
pub fn trivial_realization() -> Realization {
    let c = unit_circle();
    let mut target = single_edge_hypergraph(1);
    target.star = Some(0);
    Realization {
        kind: RealizationKind::Extension,
        points: vec![Point::origin()],
        prescribed: vec![],
        disks: vec![RealizedDisk {
            circle: c.clone(),
            edge: vec![0],
            role: DiskRole::Descendent,
            exposed: Some(c.base_point.clone()),
        }],
        anchor: c,
        gamma: rat(1, 4),
        target,
    }
}

/// Rational point of the unit circle at roughly `turns` of a full turn
/// from `(-1, 0)`, via the half-angle parametrization.
fn unit_point_at(turns: f64) -> Point {
    let theta = -std::f64::consts::PI + std::f64::consts::TAU * turns;
    let tan_half = (theta / 2.0).tan();
    let h = pow2_neg(16);
    let t = round_to_grid(&Rational::from_float(tan_half).expect("finite"), &h);
    let t2 = &t * &t;
    let den = &t2 + int(1);
    Point::new((int(1) - &t2) / &den, int(2) * &t / den)
}

/// Tree hypergraph of the complete `m`-ary tree realized near the unit
/// circle, prescribed points spread evenly in siblings-first order.
pub fn realize_h2(m: usize, gamma: &Rational, opts: &BuildOptions) -> Result<Realization, ConstructionError> {
    let t = complete_mary_tree(m);
    let n = t.len();
    let qs: Vec<Point> = (0..n).map(|i| unit_point_at((i as f64 + 0.5) / n as f64)).collect();
    let mut r = realize_tree(&t, &unit_circle(), &qs, gamma, false, opts)?;
    r.kind = RealizationKind::H2;
    Ok(r)
}

/// Realization of `build_h3(m)`, grown from [`trivial_realization`] by the
/// same sequence of extensions as the combinatorial construction.
pub fn realize_h3(m: usize, gamma: &Rational, opts: &BuildOptions) -> Result<Realization, ConstructionError> {
    Ok(realize_h3_partial(m, gamma, opts, usize::MAX)?.realization)
}

/// State of the `build_h3(m)` realization after some of its extensions.
#[derive(Clone, Debug)]
pub struct H3Progress {
    pub realization: Realization,
    pub extensions_done: usize,
    pub extensions_total: usize,
}

// Edges extended at each stage: those containing the current star.
fn stage_targets(h: &Hypergraph) -> Vec<Vec<usize>> {
    let star = h.star.expect("star is set");
    h.edges.iter().filter(|e| e.contains(&star)).cloned().collect()
}

/// The target hypergraph the realization pipeline ends with, and the number
/// of extensions it performs, computed without geometry.
pub fn h3_extension_plan(m: usize) -> (Hypergraph, usize) {
    assert!(m >= 1, "m must be positive");
    let tree = tree_hypergraph(&complete_mary_tree(m), false);
    let mut h = trivial_realization().target;
    let mut count = 0;
    for _ in 1..m {
        for f in stage_targets(&h) {
            let idx = h.find_edge(&f).expect("edge present");
            h = h.extend_at(&tree, idx);
            count += 1;
        }
    }
    (h, count)
}

/// Run at most `max_extensions` extensions of the `build_h3(m)` pipeline.
pub fn realize_h3_partial(
    m: usize,
    gamma: &Rational,
    opts: &BuildOptions,
    max_extensions: usize,
) -> Result<H3Progress, ConstructionError> {
    assert!(m >= 1, "m must be positive");
    let t = complete_mary_tree(m);
    let extensions_total = h3_extension_plan(m).1;
    let mut r = trivial_realization();
    let mut done = 0;
    'stages: for stage in 1..m {
        let targets = stage_targets(&r.target);
        for (i, f) in targets.iter().enumerate() {
            if done == max_extensions {
                break 'stages;
            }
            let idx = r.target.find_edge(f).expect("edge present");
            r = realize_extension(&r, idx, &t, gamma, opts)?;
            done += 1;
            info!("stage {stage}: extension {}/{} done, max bits {}", i + 1, targets.len(), r.max_bits());
        }
    }
    if done == extensions_total {
        r.kind = RealizationKind::H3;
    }
    Ok(H3Progress { realization: r, extensions_done: done, extensions_total })
}

fn outside_closed(x: &Point, c: &Circle) -> bool {
    side_of_circle(x, c) == Side::Outside
}

// Closed disks of (center a, radius_sq ra) and (b, rb) are disjoint.
fn disks_apart(a: &Point, ra: &Rational, b: &Point, rb: &Rational) -> bool {
    sqrt_gt_sum(&a.dist_sq(b), ra, rb)
}

fn rotate_about(center: &Point, x: &Point, cos: &Rational, sin: &Rational) -> Point {
    let d = x - center;
    Point::new(&center.x + &(cos * &d.x - sin * &d.y), &center.y + &(sin * &d.x + cos * &d.y))
}

struct Copies {
    circles: Vec<Circle>,
    touch: Vec<Point>,
    witnesses: Vec<Point>,
}

/// Extend `r` through disk `f_idx` by the tree hypergraph of `t`.
///
/// The disk is replaced by `|t|` slightly rotated and enlarged copies
/// around a small circle tangent to it at its exposed point; the tree is
/// realized on that small circle so copy `v` picks up exactly vertex `v`.
pub fn realize_extension(
    r: &Realization,
    f_idx: usize,
    t: &RootedTree,
    gamma: &Rational,
    opts: &BuildOptions,
) -> Result<Realization, ConstructionError> {
    let f = &r.disks[f_idx];
    let d = &f.circle;
    let p = f.exposed.clone().ok_or(ConstructionError::NoExposedPoint)?;
    let others: Vec<&RealizedDisk> =
        r.disks.iter().enumerate().filter(|&(j, _)| j != f_idx).map(|(_, x)| x).collect();
    if !d.is_on(&p) || others.iter().any(|o| !outside_closed(&p, &o.circle)) {
        return Err(ConstructionError::NoExposedPoint);
    }
    let other_witnesses: Vec<Point> = others.iter().filter_map(|o| o.exposed.clone()).collect();

    // small circle tangent to D at p from outside
    let dir = &p - &d.center;
    let mut tt = rat(1, 4);
    let small = loop {
        let cs = &p + &dir.scale(&tt);
        let rho_sq = &tt * &tt * &d.radius_sq;
        let room = int(4) * &rho_sq;
        let clear_disks = others.iter().all(|o| disks_apart(&cs, &room, &o.circle.center, &o.circle.radius_sq));
        let clear_points = r.points.iter().chain(&other_witnesses).all(|x| x.dist_sq(&cs) > room);
        if clear_disks && clear_points {
            break Circle::through(cs, p.clone())?;
        }
        tt /= int(2);
        if log2_floor(&tt) < -200 {
            return Err(ConstructionError::NoExposedPoint);
        }
    };
    debug!("tangent circle at scale 2^{}", log2_floor(&tt));

    let n = t.len();
    let order = siblings_first_order(t);
    let mut rank = vec![0usize; n];
    for (i, &v) in order.iter().enumerate() {
        rank[v] = i;
    }
    let copies = place_copies(r, f_idx, &small, &tt, &rank, &other_witnesses)?;

    let qs: Vec<Point> = order.iter().map(|&v| copies.touch[v].clone()).collect();
    let rho_lo = sqrt_bounds(&small.radius_sq, (8 - log2_floor(&small.radius_sq) / 2).max(8) as u64).0;
    let mut protect: Vec<Circle> = copies.circles.clone();
    protect.extend(others.iter().map(|o| o.circle.clone()));
    let mut outside_points: Vec<Point> = r.points.clone();
    outside_points.extend(other_witnesses.iter().cloned());
    outside_points.extend(copies.witnesses.iter().cloned());
    let g = [
        gamma.clone(),
        rho_lo / int(8),
        perturbation_radius(&qs, &protect)?,
        perturbation_radius(&outside_points, std::slice::from_ref(&small))?,
    ]
    .into_iter()
    .min()
    .expect("nonempty");
    let tree_gamma = floor_pow2(&g);
    debug!("tree gamma 2^{}", log2_floor(&tree_gamma));
    let tree_r = realize_tree(t, &small, &qs, &tree_gamma, false, opts)?;

    let n_old = r.points.len();
    let mut points = r.points.clone();
    points.extend(tree_r.points.iter().cloned());
    let mut disks: Vec<RealizedDisk> = others.iter().map(|o| (*o).clone()).collect();
    for v in 0..n {
        let mut edge = f.edge.clone();
        edge.push(n_old + v);
        disks.push(RealizedDisk {
            circle: copies.circles[v].clone(),
            edge,
            role: DiskRole::Copy,
            exposed: Some(copies.witnesses[v].clone()),
        });
    }
    for td in &tree_r.disks {
        disks.push(RealizedDisk {
            circle: td.circle.clone(),
            edge: td.edge.iter().map(|x| x + n_old).collect(),
            role: td.role,
            exposed: None,
        });
    }
    // drop witnesses that the new disks now cover
    let circles: Vec<Circle> = disks.iter().map(|x| x.circle.clone()).collect();
    for (j, dj) in disks.iter_mut().enumerate() {
        if let Some(w) = &dj.exposed {
            let ok = dj.circle.is_on(w)
                && circles.iter().enumerate().all(|(i, c)| i == j || outside_closed(w, c));
            if !ok {
                dj.exposed = None;
            }
        }
    }

    let target = r.target.extend_at(&tree_hypergraph(t, false), f_idx);
    let out = Realization {
        kind: RealizationKind::Extension,
        points,
        prescribed: vec![],
        disks,
        anchor: r.anchor.clone(),
        gamma: r.gamma.clone(),
        target,
    };
    let report = crate::ranges::verify_realization(&out);
    if !report.is_ok() {
        return Err(ConstructionError::VerificationFailed(format!("{report:?}")));
    }
    let bits = out.max_bits();
    if bits > opts.budget_bits {
        return Err(ConstructionError::PrecisionBudgetExceeded { bits, budget: opts.budget_bits });
    }
    Ok(out)
}

// Rotations with rational sine and cosine around the small circle's
// center, enlarged by (1 + eta); retried with smaller parameters until
// every containment and exposure requirement certifies.
fn place_copies(
    r: &Realization,
    f_idx: usize,
    small: &Circle,
    tt: &Rational,
    rank: &[usize],
    other_witnesses: &[Point],
) -> Result<Copies, ConstructionError> {
    let f = &r.disks[f_idx];
    let d = &f.circle;
    let p = &small.base_point;
    let cs = &small.center;
    let n = rank.len();
    let others: Vec<&Circle> =
        r.disks.iter().enumerate().filter(|&(j, _)| j != f_idx).map(|(_, x)| &x.circle).collect();
    let start = (usize::BITS - n.leading_zeros()) as i64 + 2;
    for j in start..start + 48 {
        let s0 = pow2_neg(j);
        let rot: Vec<(Rational, Rational)> = (0..n)
            .map(|v| {
                let s = &s0 * int(rank[v] as i64);
                let s2 = &s * &s;
                let den = Rational::one() + &s2;
                ((Rational::one() - &s2) / &den, int(2) * &s / den)
            })
            .collect();
        let touch: Vec<Point> = rot.iter().map(|(c, s)| rotate_about(cs, p, c, s)).collect();
        'eta: for e in 2..10 {
            let eta = &s0 * &s0 * tt * pow2_neg(e);
            let grow = Rational::one() + &eta;
            let mut circles = Vec::with_capacity(n);
            for (v, (c, s)) in rot.iter().enumerate() {
                let center = rotate_about(cs, &d.center, c, s);
                let base = &center + &(&touch[v] - &center).scale(&grow);
                circles.push(Circle::through(center, base)?);
            }
            for (v, cv) in circles.iter().enumerate() {
                for (i, x) in r.points.iter().enumerate() {
                    let want = if f.edge.contains(&i) { Side::Inside } else { Side::Outside };
                    if side_of_circle(x, cv) != want {
                        continue 'eta;
                    }
                }
                for (w, pw) in touch.iter().enumerate() {
                    let want = if w == v { Side::Inside } else { Side::Outside };
                    if side_of_circle(pw, cv) != want {
                        continue 'eta;
                    }
                }
                if other_witnesses.iter().any(|x| !outside_closed(x, cv)) {
                    continue 'eta;
                }
            }
            let mut witnesses = Vec::with_capacity(n);
            for v in 0..n {
                match find_witness(&circles, v, &others, small) {
                    Some(x) => witnesses.push(x),
                    None => continue 'eta,
                }
            }
            debug!("copies placed with s0 = 2^-{j}, eta = {eta}");
            return Ok(Copies { circles, touch, witnesses });
        }
    }
    Err(ConstructionError::NoExposedPoint)
}

// Boundary point of copy `v` outside every other copy, every other old
// disk and the closed small circle, found along short chords from its
// base point in both tangent directions.
fn find_witness(copies: &[Circle], v: usize, others: &[&Circle], small: &Circle) -> Option<Point> {
    let cv = &copies[v];
    let b = &cv.base_point;
    let tangent = (b - &cv.center).perp();
    let inward = &cv.center - b;
    for e in 1..80 {
        let mu = pow2_neg(e);
        for sign in [1, -1] {
            let dir = &tangent.scale(&int(sign)) + &inward.scale(&mu);
            let x = second_intersection(cv, b, &(b + &dir));
            let clear = side_of_circle(&x, small) == Side::Outside
                && copies.iter().enumerate().all(|(w, c)| w == v || outside_closed(&x, c))
                && others.iter().all(|c| outside_closed(&x, c));
            if clear {
                return Some(x);
            }
        }
    }
    None
}
