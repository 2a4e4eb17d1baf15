use crate::scalar::{Scalar, Sign};

use super::point::{half_class, ArcOrder, Circle2, Point2};
use super::KernelError;

/// `a + b * sqrt(d)` over a scalar field, `d >= 0`.
///
/// Rational values are normalized to `b = 0, d = 0` (a perfect-square
/// radicand is folded into `a`), so structural equality is value equality.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Quadratic<T> {
    pub a: T,
    pub b: T,
    pub d: T,
}

impl<T: Scalar> Quadratic<T> {
    pub fn new(a: T, b: T, d: T) -> Self {
        assert!(!d.is_negative(), "negative radicand");
        if b.is_zero() || d.is_zero() {
            return Quadratic::rational(a);
        }
        match d.exact_sqrt() {
            Some(r) => Quadratic::rational(a + b * r),
            None => Quadratic { a, b, d },
        }
    }

    pub fn rational(a: T) -> Self {
        Quadratic { a, b: T::zero(), d: T::zero() }
    }

    pub fn is_rational(&self) -> bool {
        self.b.is_zero()
    }

    pub fn sign(&self) -> Sign {
        quadratic_sign(self)
    }

    pub fn is_zero(&self) -> bool {
        self.sign() == Sign::Zero
    }

    fn radicand_with(&self, o: &Self) -> T {
        if self.is_rational() {
            o.d.clone()
        } else if o.is_rational() || self.d == o.d {
            self.d.clone()
        } else {
            panic!("mixing quadratic numbers over different radicands");
        }
    }

    pub fn add(&self, o: &Self) -> Self {
        let d = self.radicand_with(o);
        Quadratic::new(self.a.clone() + o.a.clone(), self.b.clone() + o.b.clone(), d)
    }

    pub fn sub(&self, o: &Self) -> Self {
        let d = self.radicand_with(o);
        Quadratic::new(self.a.clone() - o.a.clone(), self.b.clone() - o.b.clone(), d)
    }

    pub fn mul(&self, o: &Self) -> Self {
        let d = self.radicand_with(o);
        let a = self.a.clone() * o.a.clone() + self.b.clone() * o.b.clone() * d.clone();
        let b = self.a.clone() * o.b.clone() + self.b.clone() * o.a.clone();
        Quadratic::new(a, b, d)
    }

    pub fn neg(&self) -> Self {
        Quadratic::new(-self.a.clone(), -self.b.clone(), self.d.clone())
    }

    pub fn add_scalar(&self, s: &T) -> Self {
        Quadratic::new(self.a.clone() + s.clone(), self.b.clone(), self.d.clone())
    }

    pub fn mul_scalar(&self, s: &T) -> Self {
        Quadratic::new(self.a.clone() * s.clone(), self.b.clone() * s.clone(), self.d.clone())
    }

    /// Quotient in the same extension; `None` on division by zero.
    pub fn div(&self, o: &Self) -> Option<Self> {
        let d = self.radicand_with(o);
        let norm = o.a.clone() * o.a.clone() - o.b.clone() * o.b.clone() * d.clone();
        if norm.is_zero() {
            return None;
        }
        let conj = Quadratic { a: o.a.clone(), b: -o.b.clone(), d: d.clone() };
        let num = Quadratic { a: self.a.clone(), b: self.b.clone(), d }.mul(&conj);
        Some(Quadratic::new(num.a / norm.clone(), num.b / norm, num.d))
    }

    pub fn to_f64_lossy(&self) -> f64 {
        self.a.to_f64_lossy() + self.b.to_f64_lossy() * self.d.to_f64_lossy().sqrt()
    }
}

/// Exact sign of `a + b sqrt(d)` by case analysis and one squaring.
pub fn quadratic_sign<T: Scalar>(q: &Quadratic<T>) -> Sign {
    let sa = Sign::of(&q.a);
    let sb = if q.d.is_zero() { Sign::Zero } else { Sign::of(&q.b) };
    match (sa, sb) {
        (s, Sign::Zero) => s,
        (Sign::Zero, s) => s,
        (x, y) if x == y => x,
        _ => {
            // opposite signs: compare a^2 with b^2 d
            let diff = q.a.clone() * q.a.clone() - q.b.clone() * q.b.clone() * q.d.clone();
            match Sign::of(&diff) {
                Sign::Zero => Sign::Zero,
                Sign::Positive => sa,
                Sign::Negative => sb,
            }
        }
    }
}

/// Exact sign of `x + c sqrt(e)` where `x` lives in a (possibly different)
/// quadratic extension. Lets numbers from two extensions be compared.
pub fn sign_with_extra_root<T: Scalar>(x: &Quadratic<T>, c: &T, e: &T) -> Sign {
    let sx = quadratic_sign(x);
    let sv = if e.is_zero() { Sign::Zero } else { Sign::of(c) };
    match (sx, sv) {
        (s, Sign::Zero) => s,
        (Sign::Zero, s) => s,
        (p, q) if p == q => p,
        _ => {
            // compare x^2 with c^2 e, where x^2 stays in x's extension
            let x2 = x.mul(x);
            let diff = x2.add_scalar(&-(c.clone() * c.clone() * e.clone()));
            match quadratic_sign(&diff) {
                Sign::Zero => Sign::Zero,
                Sign::Positive => sx,
                Sign::Negative => sv,
            }
        }
    }
}

/// Sign of `x - y` for quadratic numbers over arbitrary radicands.
pub fn compare_quadratic<T: Scalar>(x: &Quadratic<T>, y: &Quadratic<T>) -> Sign {
    if y.is_rational() || x.is_rational() || x.d == y.d {
        return quadratic_sign(&x.sub(y));
    }
    let lhs = Quadratic { a: x.a.clone() - y.a.clone(), b: x.b.clone(), d: x.d.clone() };
    sign_with_extra_root(&lhs, &-y.b.clone(), &y.d)
}

/// Point whose coordinates share one quadratic extension.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct QuadPoint<T> {
    pub x: Quadratic<T>,
    pub y: Quadratic<T>,
}

impl<T: Scalar> QuadPoint<T> {
    pub fn from_rational(p: &Point2<T>) -> Self {
        QuadPoint { x: Quadratic::rational(p.x.clone()), y: Quadratic::rational(p.y.clone()) }
    }

    /// The point itself if both coordinates are rational.
    pub fn as_rational(&self) -> Option<Point2<T>> {
        if self.x.is_rational() && self.y.is_rational() {
            Some(Point2::new(self.x.a.clone(), self.y.a.clone()))
        } else {
            None
        }
    }

    /// `|self - p|^2` as a quadratic number.
    pub fn dist_sq_to(&self, p: &Point2<T>) -> Quadratic<T> {
        let dx = self.x.add_scalar(&-p.x.clone());
        let dy = self.y.add_scalar(&-p.y.clone());
        dx.mul(&dx).add(&dy.mul(&dy))
    }

    pub fn to_f64_lossy(&self) -> (f64, f64) {
        (self.x.to_f64_lossy(), self.y.to_f64_lossy())
    }
}

// Same classes as the rational version: 0 on the reference ray, 1 upper
// half, 2 opposite ray, 3 lower half.
fn half_class_quad<T: Scalar>(r: &Point2<T>, v: &QuadPoint<T>) -> u8 {
    let cr = v.y.mul_scalar(&r.x).sub(&v.x.mul_scalar(&r.y));
    match cr.sign() {
        Sign::Positive => 1,
        Sign::Negative => 3,
        Sign::Zero => {
            let dt = v.x.mul_scalar(&r.x).add(&v.y.mul_scalar(&r.y));
            if dt.sign() == Sign::Positive {
                0
            } else {
                2
            }
        }
    }
}

/// Counterclockwise order along `c`, from the rational `reference`, of a
/// quadratic point `x` and a rational point `y`. All three are assumed to
/// lie on `c`.
pub fn arc_order_quad<T: Scalar>(
    c: &Circle2<T>,
    reference: &Point2<T>,
    x: &QuadPoint<T>,
    y: &Point2<T>,
) -> ArcOrder {
    let r = reference - &c.center;
    let vx = QuadPoint { x: x.x.add_scalar(&-c.center.x.clone()), y: x.y.add_scalar(&-c.center.y.clone()) };
    let vy = y - &c.center;
    let (hx, hy) = (half_class_quad(&r, &vx), half_class(&r, &vy));
    if hx < hy {
        return ArcOrder::PBeforeQ;
    }
    if hx > hy {
        return ArcOrder::QBeforeP;
    }
    let cr = vx.x.mul_scalar(&vy.y).sub(&vx.y.mul_scalar(&vy.x));
    match cr.sign() {
        Sign::Positive => ArcOrder::PBeforeQ,
        Sign::Negative => ArcOrder::QBeforeP,
        Sign::Zero => ArcOrder::Equal,
    }
}

/// `x` lies strictly inside the counterclockwise arc of `c` from `p` to `q`.
pub fn strictly_between_quad<T: Scalar>(
    c: &Circle2<T>,
    p: &Point2<T>,
    x: &QuadPoint<T>,
    q: &Point2<T>,
) -> bool {
    if x.as_rational().as_ref() == Some(p) {
        return false;
    }
    if p == q {
        return true;
    }
    arc_order_quad(c, p, x, q) == ArcOrder::PBeforeQ
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Intersections<T> {
    pub points: Vec<QuadPoint<T>>,
    /// Radicand shared by every returned coordinate.
    pub radicand: T,
}

/// Exact intersection points of the two boundary circles.
pub fn circle_circle_intersections<T: Scalar>(
    c1: &Circle2<T>,
    c2: &Circle2<T>,
) -> Result<Intersections<T>, KernelError> {
    disk_boundary_intersections(&c1.center, &c1.radius_sq, &c2.center, &c2.radius_sq)
}

/// Same as [`circle_circle_intersections`] on bare center/radius pairs.
pub fn disk_boundary_intersections<T: Scalar>(
    o1: &Point2<T>,
    r1: &T,
    o2: &Point2<T>,
    r2: &T,
) -> Result<Intersections<T>, KernelError> {
    let delta = o2 - o1;
    let dd = delta.norm_sq();
    if dd.is_zero() {
        if r1 == r2 {
            return Err(KernelError::IdenticalCircles);
        }
        return Ok(Intersections { points: vec![], radicand: T::zero() });
    }
    let two = T::one() + T::one();
    // foot of the radical line along the center line, as a fraction of delta
    let a = (r1.clone() - r2.clone() + dd.clone()) / (two * dd.clone());
    let h2 = r1.clone() / dd - a.clone() * a.clone();
    if h2.is_negative() {
        return Ok(Intersections { points: vec![], radicand: T::zero() });
    }
    let fx = o1.x.clone() + a.clone() * delta.x.clone();
    let fy = o1.y.clone() + a * delta.y.clone();
    if h2.is_zero() {
        return Ok(Intersections {
            points: vec![QuadPoint { x: Quadratic::rational(fx), y: Quadratic::rational(fy) }],
            radicand: T::zero(),
        });
    }
    let points = [T::one(), -T::one()]
        .into_iter()
        .map(|s| QuadPoint {
            x: Quadratic::new(fx.clone(), -(s.clone() * delta.y.clone()), h2.clone()),
            y: Quadratic::new(fy.clone(), s * delta.x.clone(), h2.clone()),
        })
        .collect();
    Ok(Intersections { points, radicand: h2 })
}
