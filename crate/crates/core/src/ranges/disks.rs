use std::collections::{BTreeMap, HashSet};

use num_traits::Signed;

use crate::kernel::orient;
use crate::scalar::{floor_pow2, int, rat, Rational, Sign};
use crate::Point;

use super::family::{RangeFamily, WitnessDisk};
use super::RangeError;

fn check_distinct(points: &[Point]) -> Result<(), RangeError> {
    let mut seen = HashSet::new();
    for (i, p) in points.iter().enumerate() {
        if !seen.insert(p) {
            return Err(RangeError::DegenerateInput(format!("point {i} repeats an earlier point")));
        }
    }
    Ok(())
}

fn circumcenter(a: &Point, b: &Point, c: &Point) -> Point {
    let ab = b - a;
    let ac = c - a;
    let d = int(2) * ab.cross(&ac);
    let (lb, lc) = (ab.norm_sq(), ac.norm_sq());
    Point::new(
        &a.x + &((&ac.y * &lb - &ab.y * &lc) / &d),
        &a.y + &((&ab.x * &lc - &ac.x * &lb) / &d),
    )
}

// Counterclockwise angular order of vectors, starting from the positive x-axis.
fn ccw_cmp(u: &Point, v: &Point) -> std::cmp::Ordering {
    let half = |w: &Point| {
        let zero = int(0);
        if w.y > zero || (w.y == zero && w.x > zero) {
            0
        } else {
            1
        }
    };
    half(u).cmp(&half(v)).then_with(|| int(0).cmp(&u.cross(v)))
}

/// Power of `x` with respect to the circle: negative inside.
fn power(x: &Point, center: &Point, r2: &Rational) -> Rational {
    x.dist_sq(center) - r2
}

/// Perturb the circle `(center, r2)` so that a point `x` on it ends up
/// inside exactly when `a.x - b > 0`; points off the circle keep their side.
fn perturbed_witness(
    points: &[Point],
    center: &Point,
    r2: &Rational,
    a: &Point,
    b: &Rational,
    want: &[usize],
) -> Option<WitnessDisk> {
    let g = |x: &Point| a.dot(x) - b;
    let off: Vec<Rational> = points.iter().map(|x| power(x, center, r2).abs()).filter(|v| *v > int(0)).collect();
    let gmax = points.iter().map(|x| g(x).abs()).max().unwrap_or_else(|| int(0)) + int(1);
    let mut eps = match off.iter().min() {
        Some(m) => floor_pow2(&(m / (int(2) * gmax))),
        None => int(1),
    };
    let w = center.norm_sq() - r2;
    for _ in 0..256 {
        let c2 = center + &a.scale(&(&eps / int(2)));
        let w2 = &w + &(&eps * b);
        let rr = c2.norm_sq() - w2;
        if rr > int(0) {
            let wd = WitnessDisk::rational(c2, rr);
            if wd.range_of(points) == want {
                return Some(wd);
            }
        }
        eps /= int(2);
    }
    None
}

fn insert(map: &mut BTreeMap<Vec<usize>, WitnessDisk>, mut r: Vec<usize>, w: WitnessDisk) {
    r.sort_unstable();
    map.entry(r).or_insert(w);
}

fn collinear_ranges(points: &[Point], map: &mut BTreeMap<Vec<usize>, WitnessDisk>) {
    let n = points.len();
    let v = if n >= 2 { &points[1] - &points[0] } else { Point::new(int(1), int(0)) };
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| points[i].dot(&v).cmp(&points[j].dot(&v)));
    let s: Vec<&Point> = order.iter().map(|&i| &points[i]).collect();
    let before = |i: usize| if i > 0 { s[i - 1].midpoint(s[i]) } else { s[0] - &v };
    let after = |j: usize| if j + 1 < n { s[j].midpoint(s[j + 1]) } else { s[n - 1] + &v };
    for i in 0..n {
        for j in i..n {
            let (a, b) = (before(i), after(j));
            let w = WitnessDisk::rational(a.midpoint(&b), a.dist_sq(&b) / int(4));
            insert(map, order[i..=j].to_vec(), w);
        }
    }
}

/// Every circle through three or more of the points, with the indices on it
/// in counterclockwise order. Requires some three points not collinear.
pub(crate) fn cocircular_groups(points: &[Point]) -> Vec<(Point, Rational, Vec<usize>)> {
    let n = points.len();
    let mut seen: HashSet<(Point, Rational)> = HashSet::new();
    let mut out = vec![];
    for i in 0..n {
        for j in i + 1..n {
            for k in j + 1..n {
                if orient(&points[i], &points[j], &points[k]) == Sign::Zero {
                    continue;
                }
                let c = circumcenter(&points[i], &points[j], &points[k]);
                let r2 = c.dist_sq(&points[i]);
                if !seen.insert((c.clone(), r2.clone())) {
                    continue;
                }
                let mut on: Vec<usize> = (0..n).filter(|&t| points[t].dist_sq(&c) == r2).collect();
                on.sort_by(|&s, &t| ccw_cmp(&(&points[s] - &c), &(&points[t] - &c)));
                out.push((c, r2, on));
            }
        }
    }
    out
}

/// All subsets of `points` cut out by open disks, each with a witness.
pub fn disk_ranges(points: &[Point]) -> Result<RangeFamily, RangeError> {
    check_distinct(points)?;
    let n = points.len();
    let mut map = BTreeMap::new();
    if n == 0 {
        insert(&mut map, vec![], WitnessDisk::rational(Point::origin(), int(1)));
        return Ok(RangeFamily::from_map(vec![], map));
    }
    // empty range and singletons
    let max_x = points.iter().map(|p| p.x.clone()).max().expect("nonempty");
    insert(&mut map, vec![], WitnessDisk::rational(Point::new(max_x + int(1), points[0].y.clone()), rat(1, 4)));
    for (i, p) in points.iter().enumerate() {
        let near = points.iter().filter(|q| *q != p).map(|q| q.dist_sq(p)).min();
        let r2 = near.map(|d| floor_pow2(&d) / int(4)).unwrap_or_else(|| int(1));
        insert(&mut map, vec![i], WitnessDisk::rational(p.clone(), r2));
    }
    let collinear = (2..n).all(|k| orient(&points[0], &points[1], &points[k]) == Sign::Zero);
    if collinear {
        collinear_ranges(points, &mut map);
        return Ok(RangeFamily::from_map(points.to_vec(), map));
    }
    for (c, r2, on) in cocircular_groups(points) {
        let inside: Vec<usize> = (0..n).filter(|&t| power(&points[t], &c, &r2) < int(0)).collect();
        let q = on.len();
        let mut patterns: Vec<(Vec<usize>, Point, Rational)> = vec![
            (vec![], Point::origin(), int(1)),
            (on.clone(), Point::origin(), int(-1)),
        ];
        for start in 0..q {
            for len in 1..q {
                let sel: Vec<usize> = (0..len).map(|t| on[(start + t) % q]).collect();
                let rest: Vec<usize> = (len..q).map(|t| on[(start + t) % q]).collect();
                let (a, b) = separating_functional(points, &c, &r2, &sel, &rest);
                patterns.push((sel, a, b));
            }
        }
        for (sel, a, b) in patterns {
            let mut want: Vec<usize> = inside.iter().copied().chain(sel).collect();
            want.sort_unstable();
            if map.contains_key(&want) {
                continue;
            }
            match perturbed_witness(points, &c, &r2, &a, &b, &want) {
                Some(w) => insert(&mut map, want, w),
                None => log::warn!("no witness found for a canonical disk pattern"),
            }
        }
    }
    Ok(RangeFamily::from_map(points.to_vec(), map))
}

// Affine functional `x -> a.x - b` positive on `sel` and negative on `rest`,
// for a contiguous run `sel` of cocircular points.
fn separating_functional(points: &[Point], c: &Point, r2: &Rational, sel: &[usize], rest: &[usize]) -> (Point, Rational) {
    let tangent = |t: usize, others: &[usize]| {
        // (x - c).(q - c) - (r2 - m/2), with m the smallest gap to the others
        let u = &points[t] - c;
        let m = others.iter().map(|&j| r2 - (&points[j] - c).dot(&u)).min().expect("others nonempty");
        let b = c.dot(&u) + r2 - m / int(2);
        (u, b)
    };
    if sel.len() == 1 {
        return tangent(sel[0], rest);
    }
    if rest.len() == 1 {
        let (u, b) = tangent(rest[0], sel);
        return (-u, -b);
    }
    let (e1, e2) = (&points[sel[0]], &points[*sel.last().expect("nonempty")]);
    let d = e2 - e1;
    // h(x) = d x (x - e1) = a.x - b0
    let a0 = Point::new(-d.y.clone(), d.x.clone());
    let b0 = a0.dot(e1);
    let h = |x: &Point| a0.dot(x) - &b0;
    let sigma = if h(&points[rest[0]]) < int(0) { int(1) } else { int(-1) };
    let m = rest.iter().map(|&j| h(&points[j]).abs()).min().expect("rest nonempty");
    let a = a0.scale(&sigma);
    let b = &sigma * &b0 - m / int(2);
    (a, b)
}

/// Pairs of points that some open disk separates from all others.
pub fn delaunay_graph(points: &[Point]) -> Result<Vec<(usize, usize)>, RangeError> {
    check_distinct(points)?;
    if points.len() >= 3 && !(2..points.len()).all(|k| orient(&points[0], &points[1], &points[k]) == Sign::Zero) {
        if let Some((_, _, on)) = cocircular_groups(points).into_iter().find(|g| g.2.len() >= 4) {
            return Err(RangeError::DegeneratePosition(format!("points {on:?} are cocircular")));
        }
    }
    let fam = disk_ranges(points)?;
    Ok(fam.ranges.iter().filter(|r| r.len() == 2).map(|r| (r[0], r[1])).collect())
}

/// A range of exactly `m` points sharing one color, with its witness disk.
pub fn monochromatic_disk_witness(
    points: &[Point],
    colors: &[usize],
    m: usize,
) -> Result<Option<(Vec<usize>, WitnessDisk)>, RangeError> {
    if m == 0 || m > points.len() {
        return Ok(None);
    }
    let fam = disk_ranges(points)?;
    Ok(fam
        .ranges
        .iter()
        .zip(&fam.witnesses)
        .find(|(r, _)| r.len() == m && r.iter().all(|&i| colors[i] == colors[r[0]]))
        .map(|(r, w)| (r.clone(), w.clone())))
}

