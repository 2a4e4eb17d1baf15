//! Rational constructions on circles: dense rational points, arc
//! midpoints, the perturbation radius of a configuration and the circle
//! stepping construction that pushes a run of boundary points outward.

use num_traits::{One, Signed, Zero};

use crate::scalar::{
    approx_sqrt, floor_pow2, int, log2_floor, pow2_neg, round_to_grid, sqrt_diff_lt, sqrt_upper,
    Rational, Sign,
};
use crate::{Circle, Point};

use super::point::{arc_order, orient, side_of_circle, strictly_between, ArcOrder, Side};
use super::quadratic::{
    arc_order_quad, circle_circle_intersections, strictly_between_quad, QuadPoint,
};
use super::KernelError;

/// Second intersection of the line through `from` (on `c`) and `through`.
pub fn second_intersection(c: &Circle, from: &Point, through: &Point) -> Point {
    let w = through - from;
    let ww = w.norm_sq();
    if ww.is_zero() {
        return from.clone();
    }
    let s = -(int(2) * (from - &c.center).dot(&w)) / ww;
    from + &w.scale(&s)
}

/// Rational point of `c` on the chord from the base point (or its
/// antipode, whichever is farther) through `target`.
pub fn project_from_base(c: &Circle, target: &Point) -> Point {
    let base = c.base_point.clone();
    let anti = c.antipode();
    let from = if base.dist_sq(target) >= anti.dist_sq(target) { base } else { anti };
    second_intersection(c, &from, target)
}

/// A point exactly on `c` within `eps` of `target`.
///
/// The target is rounded to a dyadic grid first so the result's bit size
/// depends on `eps` rather than on the target's own bit size.
pub fn rational_point_on_circle_near(
    c: &Circle,
    target: &Point,
    eps: &Rational,
) -> Result<Point, KernelError> {
    if !eps.is_positive() {
        return Err(KernelError::InvalidEpsilon);
    }
    if c.is_on(target) {
        return Ok(target.clone());
    }
    let h0 = floor_pow2(eps);
    for k in 2..260 {
        let h = &h0 * pow2_neg(k);
        let t = Point::new(round_to_grid(&target.x, &h), round_to_grid(&target.y, &h));
        let x = project_from_base(c, &t);
        if x.within(target, eps) {
            return Ok(x);
        }
    }
    Err(KernelError::NoRationalPointFound)
}

/// Rational point strictly inside the counterclockwise arc from `p` to
/// `q`, close to its midpoint. `p == q` means the full circle minus `p`.
pub fn point_on_arc_between(c: &Circle, p: &Point, q: &Point) -> Result<Point, KernelError> {
    if !c.is_on(p) || !c.is_on(q) {
        return Err(KernelError::PointNotOnCircle);
    }
    let u = p - &c.center;
    let v = q - &c.center;
    let dir = if p == q {
        -u.clone()
    } else {
        match Sign::of(&u.cross(&v)) {
            Sign::Positive => &u + &v,
            Sign::Negative => -(&u + &v),
            Sign::Zero => u.perp(),
        }
    };
    let chord_sq = if p == q { int(4) * &c.radius_sq } else { p.dist_sq(q) };
    let scale = log2_floor(&chord_sq) / 2;
    let dir_sq = dir.norm_sq();
    let dir_len = sqrt_upper(&dir_sq);
    let ratio_sq = &c.radius_sq / &dir_sq;
    for k in (3..400).step_by(3) {
        let h = pow2_neg(k - scale);
        let tol = &h / (int(4) * &dir_len);
        let ratio = approx_sqrt(&ratio_sq, &tol);
        let raw = &c.center + &dir.scale(&ratio);
        let t = Point::new(round_to_grid(&raw.x, &h), round_to_grid(&raw.y, &h));
        let x = project_from_base(c, &t);
        if strictly_between(c, p, &x, q)? {
            return Ok(x);
        }
    }
    Err(KernelError::NoRationalPointFound)
}

/// Rational lower bound on `| |p - center| - radius |`.
pub fn gap_lower_bound(p: &Point, center: &Point, radius_sq: &Rational) -> Rational {
    let d2 = p.dist_sq(center);
    let num = (&d2 - radius_sq).abs();
    if num.is_zero() {
        return num;
    }
    num / (sqrt_upper(&d2) + sqrt_upper(radius_sq))
}

/// Power of 1/2 below which moving points, centers and radii preserves
/// every inside/outside classification between `points` and `circles`.
///
/// Returns 1 when there is nothing to protect.
pub fn perturbation_radius(points: &[Point], circles: &[Circle]) -> Result<Rational, KernelError> {
    let mut best: Option<Rational> = None;
    for c in circles {
        for p in points {
            let g = gap_lower_bound(p, &c.center, &c.radius_sq);
            if g.is_zero() {
                return Err(KernelError::PointOnBoundary);
            }
            if best.as_ref().is_none_or(|b| g < *b) {
                best = Some(g);
            }
        }
    }
    Ok(match best {
        None => Rational::one(),
        Some(g) => floor_pow2(&(g / int(4))),
    })
}

/// Centers within `eps` and radii within `eps`.
pub fn circles_close(c1: &Circle, c2: &Circle, eps: &Rational) -> bool {
    c1.center.within(&c2.center, eps) && sqrt_diff_lt(&c1.radius_sq, &c2.radius_sq, eps)
}

/// Output of [`lemma_step`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LemmaStep {
    pub circle: Circle,
    /// New positions of the input run, in input order, all on `circle`.
    pub moved: Vec<Point>,
    /// Crossing with the old circle between `a` and the first point.
    pub cross_a: QuadPoint<Rational>,
    /// Crossing with the old circle between the last point and `c`.
    pub cross_b: QuadPoint<Rational>,
}

fn check_arc_sequence(c: &Circle, a: &Point, bs: &[Point], cc: &Point) -> Result<(), KernelError> {
    if bs.is_empty() {
        return Err(KernelError::DegenerateArc("no points to move".into()));
    }
    let not_on = |_| KernelError::DegenerateArc("point not on circle".into());
    let mut prev = a;
    for x in bs.iter().chain(std::iter::once(cc)) {
        if x == a {
            return Err(KernelError::DegenerateArc("repeated anchor".into()));
        }
        if prev != a && arc_order(c, a, prev, x).map_err(not_on)? != ArcOrder::PBeforeQ {
            return Err(KernelError::DegenerateArc("points are not in counterclockwise order".into()));
        }
        if !c.is_on(x) {
            return Err(KernelError::DegenerateArc("point not on circle".into()));
        }
        prev = x;
    }
    Ok(())
}

fn round_point(p: &Point, h: &Rational) -> Point {
    Point::new(round_to_grid(&p.x, h), round_to_grid(&p.y, h))
}

/// Push the run `bs` (between anchors `a` and `cc`) just outside `c`.
///
/// Returns a circle `eps`-close to `c` that crosses `c` once in each
/// flanking arc, together with new positions of the run on that circle,
/// each `eps`-close to its original and outside `c`, in the same order.
/// The new center and base point are dyadic, so the new circle's bit size
/// does not depend on `c`'s. Every property is re-checked by
/// [`certify_lemma`] before returning.
pub fn lemma_step(
    c: &Circle,
    a: &Point,
    bs: &[Point],
    cc: &Point,
    eps: &Rational,
) -> Result<LemmaStep, KernelError> {
    if !eps.is_positive() {
        return Err(KernelError::InvalidEpsilon);
    }
    check_arc_sequence(c, a, bs, cc)?;
    let first = &bs[0];
    let last = &bs[bs.len() - 1];
    let mid_a = point_on_arc_between(c, a, first)?;
    let mid_b = point_on_arc_between(c, last, cc)?;

    // move the center along the bisector of the two arc midpoints, toward the run
    let mut normal = (&mid_b - &mid_a).perp();
    if orient(&mid_a, &mid_b, first) == Sign::Negative {
        normal = -normal;
    }
    let half = eps / int(2);
    let nn = normal.norm_sq();
    let norm_up = sqrt_upper(&nn);
    let mut lambda = Rational::one();
    while &lambda * &lambda * &nn >= &half * &half {
        lambda /= int(2);
    }

    let mut last_err = String::from("no attempt");
    for _ in 0..64 {
        let exact_center = &c.center + &normal.scale(&lambda);
        let scale = floor_pow2(&(&lambda * &norm_up));
        for k in (2..48).step_by(2) {
            let h = &scale * pow2_neg(k);
            let center = round_point(&exact_center, &h);
            let base = round_point(&mid_a, &h);
            let Ok(circle) = Circle::through(center, base) else { continue };
            let Some(moved) = place_run(&circle, bs, &h) else { continue };
            let Some((cross_a, cross_b)) = crossings(c, &circle, a, first, last, cc) else {
                last_err = "crossings not in the flanking arcs".into();
                continue;
            };
            let step = LemmaStep { circle, moved, cross_a, cross_b };
            match certify_lemma(c, a, bs, cc, eps, &step) {
                Ok(()) => return Ok(step),
                Err(e) => last_err = e,
            }
        }
        lambda /= int(2);
    }
    Err(KernelError::LemmaFailed(last_err))
}

// Rational stand-ins for the central projections of the run onto `new`.
fn place_run(new: &Circle, bs: &[Point], h: &Rational) -> Option<Vec<Point>> {
    bs.iter()
        .map(|b| {
            let d = b - &new.center;
            let dd = d.norm_sq();
            let tol = h / (int(4) * sqrt_upper(&dd));
            let ratio = approx_sqrt(&(&new.radius_sq / &dd), &tol);
            let target = &new.center + &d.scale(&ratio);
            rational_point_on_circle_near(new, &target, h).ok()
        })
        .collect()
}

fn crossings(
    c: &Circle,
    new: &Circle,
    a: &Point,
    first: &Point,
    last: &Point,
    cc: &Point,
) -> Option<(QuadPoint<Rational>, QuadPoint<Rational>)> {
    let inter = circle_circle_intersections(new, c).ok()?;
    if inter.points.len() != 2 {
        return None;
    }
    let (x, y) = (&inter.points[0], &inter.points[1]);
    if strictly_between_quad(c, a, x, first) && strictly_between_quad(c, last, y, cc) {
        Some((x.clone(), y.clone()))
    } else if strictly_between_quad(c, a, y, first) && strictly_between_quad(c, last, x, cc) {
        Some((y.clone(), x.clone()))
    } else {
        None
    }
}

/// Check every guarantee of [`lemma_step`] with exact predicates.
pub fn certify_lemma(
    c: &Circle,
    a: &Point,
    bs: &[Point],
    cc: &Point,
    eps: &Rational,
    step: &LemmaStep,
) -> Result<(), String> {
    let nc = &step.circle;
    if !circles_close(nc, c, eps) {
        return Err("new circle is not eps-close".into());
    }
    if step.moved.len() != bs.len() || bs.is_empty() {
        return Err("wrong number of moved points".into());
    }
    for (b, m) in bs.iter().zip(&step.moved) {
        if !m.within(b, eps) {
            return Err("moved point is not eps-close".into());
        }
        if !nc.is_on(m) {
            return Err("moved point is not on the new circle".into());
        }
        if side_of_circle(m, c) != Side::Outside {
            return Err("moved point is not outside the old circle".into());
        }
    }
    let inter = circle_circle_intersections(nc, c).map_err(|e| e.to_string())?;
    let reported = [&step.cross_a, &step.cross_b];
    if inter.points.len() != 2 || !inter.points.iter().all(|p| reported.contains(&p)) || step.cross_a == step.cross_b {
        return Err("circles do not cross exactly at the reported points".into());
    }
    let first = &bs[0];
    let last = &bs[bs.len() - 1];
    if !strictly_between_quad(c, a, &step.cross_a, first) {
        return Err("first crossing is not between a and the run".into());
    }
    if !strictly_between_quad(c, last, &step.cross_b, cc) {
        return Err("second crossing is not between the run and c".into());
    }
    let m0 = &step.moved[0];
    let mt = &step.moved[step.moved.len() - 1];
    for w in step.moved.windows(2) {
        if arc_order(nc, m0, &w[0], &w[1]).map_err(|e| e.to_string())? != ArcOrder::PBeforeQ {
            return Err("moved points are out of order".into());
        }
    }
    for x in reported {
        if x.as_rational().as_ref() == Some(m0) || arc_order_quad(nc, m0, x, mt) != ArcOrder::QBeforeP {
            return Err("a crossing lies inside the moved run".into());
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::rat;

    fn unit() -> Circle {
        Circle::through(Point::new(int(0), int(0)), Point::new(int(1), int(0))).unwrap()
    }

    fn pt(x: Rational, y: Rational) -> Point {
        Point::new(x, y)
    }

    #[test]
    fn near_point_examples() {
        let c = unit();
        let e = pt(int(1), int(0));
        assert_eq!(rational_point_on_circle_near(&c, &e, &rat(1, 10)).unwrap(), e);

        let target = pt(rat(1, 1000), rat(999, 1000));
        let x = rational_point_on_circle_near(&c, &target, &rat(1, 10)).unwrap();
        assert!(c.is_on(&x) && x.within(&target, &rat(1, 10)));

        let c2 = Circle::through(Point::origin(), pt(int(1), int(1))).unwrap();
        let far = pt(int(-1), int(-1));
        let x = rational_point_on_circle_near(&c2, &far, &rat(1, 4)).unwrap();
        assert!(c2.is_on(&x) && x.within(&far, &rat(1, 4)));

        assert_eq!(
            rational_point_on_circle_near(&c, &e, &int(0)),
            Err(KernelError::InvalidEpsilon)
        );
    }

    #[test]
    fn chord_parametrization_oracle() {
        // every slope through the base point yields a rational point on the circle;
        // (3/5, 4/5) is such a point and lies within 2/3 of (0, 1)
        let c = unit();
        let mut found = false;
        for num in -20..=20 {
            for den in 1..=20 {
                let x = second_intersection(&c, &c.base_point, &pt(int(0), rat(num, den)));
                assert!(c.is_on(&x));
                if x == pt(rat(3, 5), rat(4, 5)) {
                    found = true;
                }
            }
        }
        assert!(found);
        assert!(pt(rat(3, 5), rat(4, 5)).within(&pt(int(0), int(1)), &rat(2, 3)));
    }

    #[test]
    fn arc_midpoints_are_strict() {
        let c = unit();
        let e = pt(int(1), int(0));
        let n = pt(int(0), int(1));
        let w = pt(int(-1), int(0));
        for (p, q) in [(&e, &n), (&n, &e), (&e, &w), (&w, &e), (&e, &e)] {
            let x = point_on_arc_between(&c, p, q).unwrap();
            assert!(strictly_between(&c, p, &x, q).unwrap());
        }
    }

    #[test]
    fn perturbation_examples() {
        let c = unit();
        let eps = perturbation_radius(&[pt(int(3), int(0))], &[c.clone()]).unwrap();
        assert!(eps <= rat(1, 2) && eps.is_positive());
        // triangle inequality oracle: gap 2 means anything below 2/3 is safe
        assert!(eps < rat(2, 3));
        assert_eq!(floor_pow2(&eps), eps);

        let eps = perturbation_radius(&[Point::origin()], &[c.clone()]).unwrap();
        assert!(eps <= rat(1, 4) && eps.is_positive());

        assert_eq!(
            perturbation_radius(&[pt(int(1), int(0))], &[c]),
            Err(KernelError::PointOnBoundary)
        );
    }

    #[test]
    fn lemma_single_point() {
        let c = unit();
        let a = pt(int(1), int(0));
        let b = pt(int(0), int(1));
        let cc = pt(int(-1), int(0));
        let eps = rat(1, 10);
        let step = lemma_step(&c, &a, &[b.clone()], &cc, &eps).unwrap();
        certify_lemma(&c, &a, &[b.clone()], &cc, &eps, &step).unwrap();
        assert_eq!(side_of_circle(&step.moved[0], &c), Side::Outside);
        assert!(step.moved[0].within(&b, &eps));
    }

    #[test]
    fn lemma_three_points_keep_order() {
        let c = unit();
        let a = pt(int(1), int(0));
        let bs = vec![pt(rat(3, 5), rat(4, 5)), pt(int(0), int(1)), pt(rat(-4, 5), rat(3, 5))];
        let cc = pt(int(-1), int(0));
        let eps = rat(1, 10);
        let step = lemma_step(&c, &a, &bs, &cc, &eps).unwrap();
        certify_lemma(&c, &a, &bs, &cc, &eps, &step).unwrap();
        for w in step.moved.windows(2) {
            assert_eq!(arc_order(&step.circle, &step.moved[0], &w[0], &w[1]).unwrap(), ArcOrder::PBeforeQ);
        }
    }

    #[test]
    fn lemma_rejects_bad_input() {
        let c = unit();
        let a = pt(int(1), int(0));
        let b = pt(int(0), int(1));
        let cc = pt(int(-1), int(0));
        assert_eq!(lemma_step(&c, &a, &[b.clone()], &cc, &int(0)), Err(KernelError::InvalidEpsilon));
        assert!(matches!(
            lemma_step(&c, &a, &[cc.clone()], &b, &rat(1, 10)),
            Err(KernelError::DegenerateArc(_))
        ));
    }
}
