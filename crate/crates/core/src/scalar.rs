//! Scalar abstraction shared by the geometric types.
//!
//! Predicates are written against [`Scalar`] so they run over exact
//! rationals as well as `f64` (the latter only for display and quick
//! experiments). Everything that needs integer square roots or dyadic
//! rounding lives in the `Rational`-only helpers further down.

use std::fmt;

use num_bigint::{BigInt, Sign as BigSign};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{Num, One, Signed, ToPrimitive, Zero};

/// Exact arbitrary-precision rational number.
pub type Rational = BigRational;

pub trait Scalar: Clone + fmt::Debug + PartialOrd + Num + Signed {
    /// Square root if it is representable in the type.
    fn exact_sqrt(&self) -> Option<Self>;

    fn to_f64_lossy(&self) -> f64;

    fn from_i64(v: i64) -> Self;
}

impl Scalar for BigRational {
    fn exact_sqrt(&self) -> Option<Self> {
        if self.is_negative() {
            return None;
        }
        let n = exact_isqrt(self.numer())?;
        let d = exact_isqrt(self.denom())?;
        Some(BigRational::new(n, d))
    }

    fn to_f64_lossy(&self) -> f64 {
        rational_to_f64(self)
    }

    fn from_i64(v: i64) -> Self {
        BigRational::from_integer(BigInt::from(v))
    }
}

impl Scalar for f64 {
    fn exact_sqrt(&self) -> Option<Self> {
        if *self < 0.0 {
            None
        } else {
            Some(self.sqrt())
        }
    }

    fn to_f64_lossy(&self) -> f64 {
        *self
    }

    fn from_i64(v: i64) -> Self {
        v as f64
    }
}

/// Three-way sign of an exact quantity.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Sign {
    Negative,
    Zero,
    Positive,
}

impl Sign {
    pub fn of<T: Scalar>(v: &T) -> Sign {
        if v.is_zero() {
            Sign::Zero
        } else if v.is_positive() {
            Sign::Positive
        } else {
            Sign::Negative
        }
    }

    pub fn negate(self) -> Sign {
        match self {
            Sign::Negative => Sign::Positive,
            Sign::Zero => Sign::Zero,
            Sign::Positive => Sign::Negative,
        }
    }
}

fn exact_isqrt(n: &BigInt) -> Option<BigInt> {
    if n.is_negative() {
        return None;
    }
    let r = n.sqrt();
    if &r * &r == *n {
        Some(r)
    } else {
        None
    }
}

pub fn rat(n: i64, d: i64) -> Rational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

pub fn int(n: i64) -> Rational {
    BigRational::from_integer(BigInt::from(n))
}

/// `2^-k` (or `2^|k|` for negative `k`).
pub fn pow2_neg(k: i64) -> Rational {
    if k >= 0 {
        BigRational::new(BigInt::one(), BigInt::one() << (k as usize))
    } else {
        BigRational::from_integer(BigInt::one() << ((-k) as usize))
    }
}

/// Floor of log2 of a positive rational.
pub fn log2_floor(x: &Rational) -> i64 {
    assert!(x.is_positive(), "log2 of non-positive rational");
    let nb = x.numer().bits() as i64;
    let db = x.denom().bits() as i64;
    // 2^(nb-1) <= n < 2^nb, same for d
    let mut e = nb - db;
    // now 2^(e-1) < x < 2^(e+1); settle it exactly
    if *x < pow2_neg(-e) {
        e -= 1;
    }
    debug_assert!(pow2_neg(-e) <= *x && *x < pow2_neg(-(e + 1)));
    e
}

/// Largest power of two not exceeding `x`, capped at one.
///
/// Used for every epsilon/delta in the construction so denominators stay
/// powers of two.
pub fn floor_pow2(x: &Rational) -> Rational {
    let e = log2_floor(x).min(0);
    pow2_neg(-e)
}

/// Rational lower and upper bounds on `sqrt(x)` that differ by `2^-bits`.
pub fn sqrt_bounds(x: &Rational, bits: u64) -> (Rational, Rational) {
    assert!(!x.is_negative(), "sqrt of negative rational");
    let scale = BigInt::one() << (2 * bits as usize);
    let scaled = (x.numer() * &scale).div_floor(x.denom());
    let root = scaled.sqrt();
    let den = BigInt::one() << (bits as usize);
    let lo = BigRational::new(root.clone(), den.clone());
    let hi = BigRational::new(root + 1, den);
    (lo, hi)
}

/// Upper bound on `sqrt(x)` within a relative factor of about `1 + 2^-8`.
pub fn sqrt_upper(x: &Rational) -> Rational {
    if x.is_zero() {
        return Rational::zero();
    }
    if let Some(r) = x.exact_sqrt() {
        return r;
    }
    let bits = (8 - log2_floor(x) / 2).max(8) as u64;
    sqrt_bounds(x, bits).1
}

/// Dyadic approximation of `sqrt(x)` within `tol`.
pub fn approx_sqrt(x: &Rational, tol: &Rational) -> Rational {
    let bits = (-log2_floor(tol) + 1).max(0) as u64;
    sqrt_bounds(x, bits).0
}

/// Round to the nearest multiple of `h` (ties up).
pub fn round_to_grid(x: &Rational, h: &Rational) -> Rational {
    let q = x / h + rat(1, 2);
    q.floor() * h
}

/// Largest bit length among numerator and denominator.
pub fn bit_size(x: &Rational) -> u64 {
    x.numer().bits().max(x.denom().bits())
}

/// `sqrt(x) < sqrt(y) + e` for `x, y >= 0`, `e > 0`, decided exactly.
pub fn sqrt_lt_sqrt_plus(x: &Rational, y: &Rational, e: &Rational) -> bool {
    let lhs = x - y - e * e;
    if !lhs.is_positive() {
        return true;
    }
    &lhs * &lhs < int(4) * e * e * y
}

/// `|sqrt(x) - sqrt(y)| < e`.
pub fn sqrt_diff_lt(x: &Rational, y: &Rational, e: &Rational) -> bool {
    sqrt_lt_sqrt_plus(x, y, e) && sqrt_lt_sqrt_plus(y, x, e)
}

/// `sqrt(x) > sqrt(y) + sqrt(z)` for non-negative arguments.
pub fn sqrt_gt_sum(x: &Rational, y: &Rational, z: &Rational) -> bool {
    let l = x - y - z;
    if !l.is_positive() {
        return false;
    }
    &l * &l > int(4) * y * z
}

/// Parse `"p/q"`, `"p"` or a plain decimal such as `"0.25"`.
pub fn parse_rational(s: &str) -> Option<Rational> {
    let s = s.trim();
    if let Some((n, d)) = s.split_once('/') {
        let n: BigInt = n.trim().parse().ok()?;
        let d: BigInt = d.trim().parse().ok()?;
        if d.is_zero() {
            return None;
        }
        return Some(BigRational::new(n, d));
    }
    if let Some((ip, fp)) = s.split_once('.') {
        let neg = ip.starts_with('-');
        let digits = format!("{}{}", ip.trim_start_matches('-'), fp);
        let n: BigInt = digits.parse().ok()?;
        let d = num_traits::pow(BigInt::from(10), fp.len());
        let v = BigRational::new(n, d);
        return Some(if neg { -v } else { v });
    }
    let n: BigInt = s.parse().ok()?;
    Some(BigRational::from_integer(n))
}

pub fn format_rational(x: &Rational) -> String {
    x.to_string()
}

/// Nearest-ish `f64`; survives huge numerators and denominators by
/// shifting both down to 64 significant bits first.
pub fn rational_to_f64(x: &Rational) -> f64 {
    if let Some(v) = x.to_f64() {
        if v.is_finite() && (v != 0.0 || x.is_zero()) {
            return v;
        }
    }
    let n = x.numer();
    let d = x.denom();
    let nb = n.bits() as i64;
    let db = d.bits() as i64;
    let ns = (nb - 64).max(0);
    let ds = (db - 64).max(0);
    let nm = (n.abs() >> ns as usize).to_f64().unwrap_or(f64::MAX);
    let dm = (d >> ds as usize).to_f64().unwrap_or(f64::MAX);
    let v = nm / dm * 2f64.powi((ns - ds) as i32);
    if n.sign() == BigSign::Minus {
        -v
    } else {
        v
    }
}
