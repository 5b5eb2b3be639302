//! Coefficient arithmetic shared by the exact (circle) and numerical (sphere)
//! pipelines.

use std::fmt::Debug;
use std::ops::{Add, Neg, Sub};

use num_integer::Integer;
use num_rational::Ratio;
use num_traits::Zero;
use serde_json::Value;

use crate::error::{Error, Result};

/// Exact rationals, used for angles in turns on the circle.
pub type Q = Ratio<i64>;

/// `t - floor(t)`, the representative of `t` in `[0, 1)`.
pub fn frac_lift<S: Scalar>(t: S) -> S {
    t.frac()
}

/// A real value together with the integer it was snapped to.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Snapped {
    pub value: i64,
    pub residual: f64,
}

/// Values a cochain can take. Implemented by [`Q`] (exact) and `f64`.
pub trait Scalar:
    Copy
    + Debug
    + PartialEq
    + PartialOrd
    + Send
    + Sync
    + 'static
    + Add<Output = Self>
    + Sub<Output = Self>
    + Neg<Output = Self>
    + Zero
{
    const EXACT: bool;

    fn from_int(n: i64) -> Self;
    fn scale(self, c: i64) -> Self;
    fn to_f64(self) -> f64;
    fn floor(self) -> i64;

    fn frac(self) -> Self {
        self - Self::from_int(self.floor())
    }

    /// Distance to the nearest integer and that integer.
    fn nearest(self) -> Snapped;

    /// Snap to an integer, failing if the residual exceeds `tol`.
    fn snap(self, tol: f64) -> Result<Snapped> {
        let s = self.nearest();
        if s.residual > tol {
            return Err(Error::SnapFailure {
                raw: self.to_f64(),
                residual: s.residual,
                tol,
            });
        }
        Ok(s)
    }

    /// Distance from `self` to the nearest integer, as a circle distance.
    fn circle_residual(self) -> f64 {
        self.nearest().residual
    }

    fn to_json(self) -> Value;
}

impl Scalar for Q {
    const EXACT: bool = true;

    fn from_int(n: i64) -> Self {
        Q::from_integer(n)
    }

    fn scale(self, c: i64) -> Self {
        self * Q::from_integer(c)
    }

    fn to_f64(self) -> f64 {
        *self.numer() as f64 / *self.denom() as f64
    }

    fn floor(self) -> i64 {
        self.numer().div_floor(self.denom())
    }

    fn nearest(self) -> Snapped {
        let lo = Scalar::floor(self);
        let below = self - Q::from_integer(lo);
        let above = Q::from_integer(lo + 1) - self;
        if below <= above {
            Snapped {
                value: lo,
                residual: below.to_f64(),
            }
        } else {
            Snapped {
                value: lo + 1,
                residual: above.to_f64(),
            }
        }
    }

    fn to_json(self) -> Value {
        Value::String(format_rational(self))
    }
}

impl Scalar for f64 {
    const EXACT: bool = false;

    fn from_int(n: i64) -> Self {
        n as f64
    }

    fn scale(self, c: i64) -> Self {
        self * c as f64
    }

    fn to_f64(self) -> f64 {
        self
    }

    fn floor(self) -> i64 {
        f64::floor(self) as i64
    }

    fn nearest(self) -> Snapped {
        let r = self.round();
        Snapped {
            value: r as i64,
            residual: (self - r).abs(),
        }
    }

    fn to_json(self) -> Value {
        serde_json::Number::from_f64(self).map_or(Value::Null, Value::Number)
    }
}

/// `"p/q"` for proper fractions, `"p"` for integers.
pub fn format_rational(q: Q) -> String {
    if *q.denom() == 1 {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

/// Parses `"p/q"`, `"p"` or a negative variant of either.
pub fn parse_rational(s: &str) -> Result<Q> {
    let s = s.trim();
    let bad = || Error::Parse(format!("not a rational: {s:?}"));
    match s.split_once('/') {
        Some((p, q)) => {
            let p: i64 = p.trim().parse().map_err(|_| bad())?;
            let q: i64 = q.trim().parse().map_err(|_| bad())?;
            if q == 0 {
                return Err(bad());
            }
            Ok(Q::new(p, q))
        }
        None => Ok(Q::from_integer(s.parse().map_err(|_| bad())?)),
    }
}

/// Absolute value of a scalar difference, as `f64`.
pub fn abs_diff<S: Scalar>(a: S, b: S) -> f64 {
    (a - b).to_f64().abs()
}

/// Distance between `a` and `b` in `R/Z`.
pub fn circle_distance<S: Scalar>(a: S, b: S) -> f64 {
    (a - b).circle_residual()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn frac_lift_examples() {
        assert_eq!(frac_lift(1.25_f64), 0.25);
        assert_eq!(frac_lift(-0.25_f64), 0.75);
        assert_eq!(frac_lift(Q::new(7, 3)), Q::new(1, 3));
        assert_eq!(frac_lift(Q::new(-1, 3)), Q::new(2, 3));
        assert_eq!(frac_lift(Q::from_integer(-2)), Q::zero());
    }

    #[test]
    fn snapping() {
        assert_eq!(0.9999999_f64.snap(1e-6).unwrap().value, 1);
        assert!(matches!(0.4_f64.snap(1e-6), Err(Error::SnapFailure { .. })));
        let s = Q::new(-3, 1).snap(0.0).unwrap();
        assert_eq!(s.value, -3);
        assert_eq!(s.residual, 0.0);
        assert_eq!(Q::new(5, 2).nearest().value, 2);
    }

    #[test]
    fn rational_strings() {
        assert_eq!(parse_rational("1/3").unwrap(), Q::new(1, 3));
        assert_eq!(parse_rational("-2/6").unwrap(), Q::new(-1, 3));
        assert_eq!(parse_rational("4").unwrap(), Q::from_integer(4));
        assert!(parse_rational("1/0").is_err());
        assert!(parse_rational("x").is_err());
        assert_eq!(format_rational(Q::new(2, 6)), "1/3");
        assert_eq!(format_rational(Q::from_integer(-1)), "-1");
    }
}
