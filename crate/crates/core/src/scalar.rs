//! Number types shared by every geometric routine.
//!
//! Two computation modes exist: exact rationals ([`Rational`]) and binary64
//! floats (`f64`). Routines that only need field operations are generic over
//! [`Scalar`]; routines that need square roots or trigonometry are float-only.

use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, ToPrimitive, Zero};

/// Arbitrary-precision rational number used in exact mode.
pub type Rational = BigRational;

/// Tolerance for float-mode geometric predicates (symmetry, collinearity,
/// singular maps).
pub const EPS_GEOM: f64 = 1e-9;

/// Field element usable by the mode-generic geometry.
///
/// Exact implementations answer every predicate without error; the float
/// implementation compares against [`EPS_GEOM`].
pub trait Scalar:
    Clone
    + fmt::Debug
    + fmt::Display
    + PartialOrd
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Div<Output = Self>
    + Neg<Output = Self>
    + Send
    + Sync
{
    /// `true` for error-free arithmetic.
    const EXACT: bool;

    fn zero() -> Self;
    fn one() -> Self;
    fn from_i64(v: i64) -> Self;
    fn to_f64(&self) -> f64;

    /// Exact: `== 0`. Float: `|x| <= EPS_GEOM`.
    fn is_negligible(&self) -> bool;

    /// Strictly positive beyond the mode's tolerance.
    fn is_positive(&self) -> bool {
        !self.is_negligible() && *self > Self::zero()
    }

    /// Strictly negative beyond the mode's tolerance.
    fn is_negative(&self) -> bool {
        !self.is_negligible() && *self < Self::zero()
    }

    fn approx_eq(&self, other: &Self) -> bool {
        (self.clone() - other.clone()).is_negligible()
    }

    fn abs(&self) -> Self {
        if *self < Self::zero() {
            -self.clone()
        } else {
            self.clone()
        }
    }

    fn half() -> Self {
        Self::one() / Self::from_i64(2)
    }
}

impl Scalar for f64 {
    const EXACT: bool = false;

    fn zero() -> Self {
        0.0
    }
    fn one() -> Self {
        1.0
    }
    fn from_i64(v: i64) -> Self {
        v as f64
    }
    fn to_f64(&self) -> f64 {
        *self
    }
    fn is_negligible(&self) -> bool {
        f64::abs(*self) <= EPS_GEOM
    }
    fn abs(&self) -> Self {
        f64::abs(*self)
    }
    fn half() -> Self {
        0.5
    }
}

impl Scalar for Rational {
    const EXACT: bool = true;

    fn zero() -> Self {
        Zero::zero()
    }
    fn one() -> Self {
        num_traits::One::one()
    }
    fn from_i64(v: i64) -> Self {
        Rational::from_integer(BigInt::from(v))
    }
    fn to_f64(&self) -> f64 {
        ToPrimitive::to_f64(self).unwrap_or(f64::NAN)
    }
    fn is_negligible(&self) -> bool {
        Zero::is_zero(self)
    }
    fn abs(&self) -> Self {
        Signed::abs(self)
    }
}

/// Builds `num/den` exactly.
pub fn ratio(num: i64, den: i64) -> Rational {
    Rational::new(BigInt::from(num), BigInt::from(den))
}

/// Exact rational value of a finite float (dyadic, no rounding).
pub fn rational_from_f64(v: f64) -> Option<Rational> {
    Rational::from_float(v)
}

/// Parses `"p/q"` or `"p"` into a reduced rational.
pub fn parse_rational(s: &str) -> Option<Rational> {
    let s = s.trim();
    match s.split_once('/') {
        Some((p, q)) => {
            let p: BigInt = p.trim().parse().ok()?;
            let q: BigInt = q.trim().parse().ok()?;
            if q.is_zero() {
                return None;
            }
            Some(Rational::new(p, q))
        }
        None => {
            let p: BigInt = s.parse().ok()?;
            Some(Rational::from_integer(p))
        }
    }
}

/// Formats a rational as a reduced fraction, `"p/q"` or `"p"` for integers.
pub fn format_rational(r: &Rational) -> String {
    // BigRational keeps itself reduced with a positive denominator.
    r.to_string()
}

/// Formats a float with 12 significant digits, trimming trailing zeros.
pub fn format_sig12(v: f64) -> String {
    if !v.is_finite() {
        return v.to_string();
    }
    let rounded: f64 = format!("{v:.11e}").parse().unwrap_or(v);
    format!("{rounded}")
}
