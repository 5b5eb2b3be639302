//! Exact circle geometry. Angles are rationals in turns, so `Ω = dt` has
//! total mass 1.

use num_traits::Zero;

use crate::scalar::{Scalar, Q};

/// A point of `R/Z`, stored as its representative in `[0, 1)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct CirclePoint(Q);

impl CirclePoint {
    pub fn new(t: Q) -> Self {
        CirclePoint(t.frac())
    }

    pub fn t(&self) -> Q {
        self.0
    }

    pub fn rotate(&self, turns: Q) -> Self {
        CirclePoint::new(self.0 + turns)
    }
}

/// The forward arc from `start` of the given `length` (in turns).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct CircleArc {
    pub start: CirclePoint,
    pub length: Q,
}

impl CircleArc {
    /// Forward arc from `a` to `b`: its length is `(b - a) mod 1`.
    pub fn geodesic(a: CirclePoint, b: CirclePoint) -> Self {
        CircleArc {
            start: a,
            length: (b.t() - a.t()).frac(),
        }
    }

    pub fn end(&self) -> CirclePoint {
        self.start.rotate(self.length)
    }

    /// Unreduced endpoint `start + length`, the lift along the arc.
    pub fn end_lift(&self) -> Q {
        self.start.t() + self.length
    }

    pub fn is_degenerate(&self) -> bool {
        self.length.is_zero()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn forward_arc_wraps() {
        let a = CirclePoint::new(Q::new(1, 5));
        let b = CirclePoint::new(Q::new(1, 10));
        let arc = CircleArc::geodesic(a, b);
        assert_eq!(arc.length, Q::new(9, 10));
        assert_eq!(arc.end(), b);
        assert_eq!(arc.end_lift(), Q::new(11, 10));
    }

    #[test]
    fn canonical_representative() {
        assert_eq!(CirclePoint::new(Q::new(5, 4)).t(), Q::new(1, 4));
        assert_eq!(CirclePoint::new(Q::new(-1, 4)).t(), Q::new(3, 4));
        assert!(CircleArc::geodesic(
            CirclePoint::new(Q::new(1, 3)),
            CirclePoint::new(Q::new(4, 3))
        )
        .is_degenerate());
    }
}
