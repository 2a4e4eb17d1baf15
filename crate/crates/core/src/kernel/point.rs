use std::ops::{Add, Mul, Neg, Sub};

use crate::scalar::{Scalar, Sign};

use super::KernelError;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Point2<T> {
    pub x: T,
    pub y: T,
}

impl<T: Scalar> Point2<T> {
    pub fn new(x: T, y: T) -> Self {
        Point2 { x, y }
    }

    pub fn origin() -> Self {
        Point2::new(T::zero(), T::zero())
    }

    pub fn dot(&self, o: &Self) -> T {
        self.x.clone() * o.x.clone() + self.y.clone() * o.y.clone()
    }

    pub fn cross(&self, o: &Self) -> T {
        self.x.clone() * o.y.clone() - self.y.clone() * o.x.clone()
    }

    pub fn norm_sq(&self) -> T {
        self.dot(self)
    }

    pub fn dist_sq(&self, o: &Self) -> T {
        (self - o).norm_sq()
    }

    pub fn scale(&self, s: &T) -> Self {
        Point2::new(self.x.clone() * s.clone(), self.y.clone() * s.clone())
    }

    /// Counterclockwise quarter turn.
    pub fn perp(&self) -> Self {
        Point2::new(-self.y.clone(), self.x.clone())
    }

    pub fn midpoint(&self, o: &Self) -> Self {
        let two = T::one() + T::one();
        Point2::new(
            (self.x.clone() + o.x.clone()) / two.clone(),
            (self.y.clone() + o.y.clone()) / two,
        )
    }

    /// `|self - o| < eps`, decided on squares.
    pub fn within(&self, o: &Self, eps: &T) -> bool {
        self.dist_sq(o) < eps.clone() * eps.clone()
    }
}

/// Sign of the orientation of the triangle `(a, b, c)`.
pub fn orient<T: Scalar>(a: &Point2<T>, b: &Point2<T>, c: &Point2<T>) -> Sign {
    Sign::of(&(b - a).cross(&(c - a)))
}

impl<'a, T: Scalar> Sub<&'a Point2<T>> for &'a Point2<T> {
    type Output = Point2<T>;
    fn sub(self, o: &'a Point2<T>) -> Point2<T> {
        Point2::new(self.x.clone() - o.x.clone(), self.y.clone() - o.y.clone())
    }
}

impl<'a, T: Scalar> Add<&'a Point2<T>> for &'a Point2<T> {
    type Output = Point2<T>;
    fn add(self, o: &'a Point2<T>) -> Point2<T> {
        Point2::new(self.x.clone() + o.x.clone(), self.y.clone() + o.y.clone())
    }
}

impl<T: Scalar> Sub for Point2<T> {
    type Output = Point2<T>;
    fn sub(self, o: Point2<T>) -> Point2<T> {
        Point2::new(self.x - o.x, self.y - o.y)
    }
}

impl<T: Scalar> Add for Point2<T> {
    type Output = Point2<T>;
    fn add(self, o: Point2<T>) -> Point2<T> {
        Point2::new(self.x + o.x, self.y + o.y)
    }
}

impl<'a, T: Scalar> Mul<&'a T> for &'a Point2<T> {
    type Output = Point2<T>;
    fn mul(self, s: &'a T) -> Point2<T> {
        self.scale(s)
    }
}

impl<T: Scalar> Neg for Point2<T> {
    type Output = Point2<T>;
    fn neg(self) -> Point2<T> {
        Point2::new(-self.x, -self.y)
    }
}

/// Boundary of an open disk, carrying one known point on it.
///
/// The base point makes rational points dense on the circle: every line
/// through it with rational slope meets the circle again at a rational
/// point.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Circle2<T> {
    pub center: Point2<T>,
    pub radius_sq: T,
    pub base_point: Point2<T>,
}

impl<T: Scalar> Circle2<T> {
    pub fn new(center: Point2<T>, radius_sq: T, base_point: Point2<T>) -> Result<Self, KernelError> {
        if !radius_sq.is_positive() {
            return Err(KernelError::InvalidCircle("radius_sq must be positive".into()));
        }
        if center.dist_sq(&base_point) != radius_sq {
            return Err(KernelError::InvalidCircle("base point is not on the circle".into()));
        }
        Ok(Circle2 { center, radius_sq, base_point })
    }

    /// Circle centered at `center` passing through `base`.
    pub fn through(center: Point2<T>, base: Point2<T>) -> Result<Self, KernelError> {
        let radius_sq = center.dist_sq(&base);
        Circle2::new(center, radius_sq, base)
    }

    /// Point diametrically opposite the base point; rational whenever the
    /// circle is.
    pub fn antipode(&self) -> Point2<T> {
        let two = T::one() + T::one();
        Point2::new(
            two.clone() * self.center.x.clone() - self.base_point.x.clone(),
            two * self.center.y.clone() - self.base_point.y.clone(),
        )
    }

    pub fn contains(&self, p: &Point2<T>) -> bool {
        side_of_circle(p, self) == Side::Inside
    }

    pub fn is_on(&self, p: &Point2<T>) -> bool {
        side_of_circle(p, self) == Side::On
    }

    pub fn same_disk(&self, o: &Self) -> bool {
        self.center == o.center && self.radius_sq == o.radius_sq
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Side {
    Inside,
    On,
    Outside,
}

pub fn side_of_disk<T: Scalar>(p: &Point2<T>, center: &Point2<T>, radius_sq: &T) -> Side {
    match Sign::of(&(p.dist_sq(center) - radius_sq.clone())) {
        Sign::Negative => Side::Inside,
        Sign::Zero => Side::On,
        Sign::Positive => Side::Outside,
    }
}

/// Exact position of `p` relative to the open disk bounded by `c`.
pub fn side_of_circle<T: Scalar>(p: &Point2<T>, c: &Circle2<T>) -> Side {
    side_of_disk(p, &c.center, &c.radius_sq)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ArcOrder {
    PBeforeQ,
    QBeforeP,
    Equal,
}

// 0: along the reference ray, 1: open upper half, 2: opposite ray, 3: open lower half
pub(crate) fn half_class<T: Scalar>(reference: &Point2<T>, v: &Point2<T>) -> u8 {
    let cr = Sign::of(&reference.cross(v));
    match cr {
        Sign::Positive => 1,
        Sign::Negative => 3,
        Sign::Zero => {
            if reference.dot(v).is_positive() {
                0
            } else {
                2
            }
        }
    }
}

/// Counterclockwise order of `p` and `q` along `c`, starting at `reference`.
pub fn arc_order<T: Scalar>(
    c: &Circle2<T>,
    reference: &Point2<T>,
    p: &Point2<T>,
    q: &Point2<T>,
) -> Result<ArcOrder, KernelError> {
    for pt in [reference, p, q] {
        if !c.is_on(pt) {
            return Err(KernelError::PointNotOnCircle);
        }
    }
    let r = reference - &c.center;
    let vp = p - &c.center;
    let vq = q - &c.center;
    let (hp, hq) = (half_class(&r, &vp), half_class(&r, &vq));
    Ok(if hp < hq {
        ArcOrder::PBeforeQ
    } else if hp > hq {
        ArcOrder::QBeforeP
    } else {
        match Sign::of(&vp.cross(&vq)) {
            Sign::Positive => ArcOrder::PBeforeQ,
            Sign::Negative => ArcOrder::QBeforeP,
            Sign::Zero => ArcOrder::Equal,
        }
    })
}

/// `x` lies strictly inside the counterclockwise open arc from `p` to `q`.
/// When `p == q` the arc is the whole circle minus `p`.
pub fn strictly_between<T: Scalar>(
    c: &Circle2<T>,
    p: &Point2<T>,
    x: &Point2<T>,
    q: &Point2<T>,
) -> Result<bool, KernelError> {
    if x == p {
        return Ok(false);
    }
    if p == q {
        return Ok(c.is_on(x));
    }
    Ok(arc_order(c, p, x, q)? == ArcOrder::PBeforeQ)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{int, rat, Rational};

    fn unit() -> Circle2<Rational> {
        Circle2::through(Point2::new(int(0), int(0)), Point2::new(int(1), int(0))).unwrap()
    }

    fn pt(x: Rational, y: Rational) -> Point2<Rational> {
        Point2::new(x, y)
    }

    #[test]
    fn side_examples() {
        let c = unit();
        assert_eq!(side_of_circle(&pt(int(0), int(0)), &c), Side::Inside);
        assert_eq!(side_of_circle(&pt(int(1), int(0)), &c), Side::On);
        assert_eq!(side_of_circle(&pt(rat(3, 2), int(0)), &c), Side::Outside);
    }

    #[test]
    fn side_generic_over_f64() {
        let c = Circle2::<f64>::through(Point2::new(0.0, 0.0), Point2::new(0.0, 2.0)).unwrap();
        assert_eq!(side_of_circle(&Point2::new(1.0, 1.0), &c), Side::Inside);
        assert_eq!(side_of_circle(&Point2::new(3.0, 0.0), &c), Side::Outside);
    }

    #[test]
    fn arc_order_examples() {
        let c = unit();
        let e = pt(int(1), int(0));
        let n = pt(int(0), int(1));
        let w = pt(int(-1), int(0));
        assert_eq!(arc_order(&c, &e, &n, &w).unwrap(), ArcOrder::PBeforeQ);
        assert_eq!(arc_order(&c, &e, &n, &n).unwrap(), ArcOrder::Equal);
        assert_eq!(arc_order(&c, &n, &w, &e).unwrap(), ArcOrder::PBeforeQ);
        assert_eq!(arc_order(&c, &n, &e, &w).unwrap(), ArcOrder::QBeforeP);
        assert!(matches!(
            arc_order(&c, &e, &pt(int(2), int(0)), &n),
            Err(KernelError::PointNotOnCircle)
        ));
    }

    #[test]
    fn arc_order_matches_angle_oracle() {
        // Pythagorean points on the unit circle, compared by float angle offset.
        let triples = [(3, 4, 5), (5, 12, 13), (20, 21, 29)];
        let mut pts = vec![];
        for (a, b, h) in triples {
            for (sx, sy) in [(1, 1), (-1, 1), (-1, -1), (1, -1)] {
                pts.push(pt(rat(sx * a, h), rat(sy * b, h)));
                pts.push(pt(rat(sx * b, h), rat(sy * a, h)));
            }
        }
        let c = unit();
        let ang = |p: &Point2<Rational>| p.y.to_f64_lossy().atan2(p.x.to_f64_lossy());
        for r in &pts {
            for p in &pts {
                for q in &pts {
                    let off = |x: &Point2<Rational>| (ang(x) - ang(r)).rem_euclid(std::f64::consts::TAU);
                    let want = if (off(p) - off(q)).abs() < 1e-12 {
                        ArcOrder::Equal
                    } else if off(p) < off(q) {
                        ArcOrder::PBeforeQ
                    } else {
                        ArcOrder::QBeforeP
                    };
                    assert_eq!(arc_order(&c, r, p, q).unwrap(), want);
                }
            }
        }
    }

    #[test]
    fn circle_rejects_bad_base() {
        assert!(Circle2::new(pt(int(0), int(0)), int(1), pt(int(1), int(1))).is_err());
        assert_eq!(unit().antipode(), pt(int(-1), int(0)));
    }
}
