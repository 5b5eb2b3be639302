use std::sync::Arc;

use crate::complexes::{Chain, ChainValued, Cochain, CochainValued, Coefficients};
use crate::diffeo::{CircleRotation, Word};
use crate::error::{Error, Result};
use crate::geometry::{BaseSimplex, Circle, CircleArc, CirclePoint, MappedSimplex};
use crate::scalar::{frac_lift, Scalar, Q};

use super::Zigzag;

/// Exact zig-zag data on the circle (`n = 1`).
///
/// * `Δ_0 = x`, `Δ_1(g)` = forward arc from `x` of length `frac(s_g)`;
/// * `η̄_0(t) = frac(t)`, `w_1 = Ω - dη̄_0`;
/// * `w_0(g) = (g^*η̄_0 - η̄_0) - (g^*η̄_0 - η̄_0)(x)`, normalized to vanish at `x`.
#[derive(Debug, Clone)]
pub struct CircleZigzag {
    inner: Arc<Inner>,
}

#[derive(Debug)]
struct Inner {
    x: CirclePoint,
}

impl Default for CircleZigzag {
    fn default() -> Self {
        CircleZigzag::new(CirclePoint::new(Q::from_integer(0)))
    }
}

fn vertex_of(s: &MappedSimplex<Circle>) -> Result<CirclePoint> {
    match &s.base {
        BaseSimplex::Vertex(p) => Ok(*p),
        _ => Err(Error::DimensionMismatch {
            expected: 0,
            found: s.dim(),
        }),
    }
}

fn arc_of(s: &MappedSimplex<Circle>) -> Result<CircleArc> {
    match &s.base {
        BaseSimplex::Arc(a) => Ok(*a),
        _ => Err(Error::DimensionMismatch {
            expected: 1,
            found: s.dim(),
        }),
    }
}

impl CircleZigzag {
    pub fn new(x: CirclePoint) -> Self {
        CircleZigzag {
            inner: Arc::new(Inner { x }),
        }
    }

    pub fn x(&self) -> CirclePoint {
        self.inner.x
    }

    /// `Δ_k(g_1, …, g_k)`.
    pub fn build_delta(&self, k: usize, tuple: &[Word<CircleRotation>]) -> Result<Chain<Circle>> {
        if tuple.len() != k {
            return Err(Error::ArityMismatch {
                expected: k,
                found: tuple.len(),
            });
        }
        let x = self.x();
        match k {
            0 => Ok(Chain::from_simplex(MappedSimplex::vertex(x))),
            1 => {
                let length = frac_lift(tuple[0].total_turns());
                Ok(Chain::from_simplex(MappedSimplex::arc(CircleArc {
                    start: x,
                    length,
                })))
            }
            _ => Err(Error::Invalid(format!(
                "Δ_{k} is not defined on the circle"
            ))),
        }
    }

    /// `η̄_0(t) = frac(t)`.
    pub fn eta_bar_at(&self, p: CirclePoint) -> Q {
        frac_lift(p.t())
    }

    /// `w_1(arc) = length - (η̄_0(end) - η̄_0(start))`.
    pub fn w_one(&self, arc: &CircleArc) -> Q {
        arc.length - (self.eta_bar_at(arc.end()) - self.eta_bar_at(arc.start))
    }

    /// `w_0(g)(y)`, an integer.
    pub fn w_bottom(&self, g: &Word<CircleRotation>, y: CirclePoint) -> Q {
        let shift =
            |p: CirclePoint| self.eta_bar_at(p.rotate(g.total_turns())) - self.eta_bar_at(p);
        shift(y) - shift(self.x())
    }
}

impl Zigzag<Circle> for CircleZigzag {
    fn basepoint(&self) -> CirclePoint {
        self.x()
    }

    fn snap_tol(&self) -> f64 {
        0.0
    }

    fn delta(&self, k: usize) -> ChainValued<Circle> {
        assert!(k <= 1, "Δ_k needs k ≤ 1 on the circle");
        let z = self.clone();
        ChainValued::new(k, k, move |t| z.build_delta(k, t))
    }

    fn w(&self, k: usize) -> CochainValued<Circle> {
        let z = self.clone();
        match k {
            1 => CochainValued::constant(Cochain::new(1, Coefficients::Integers, move |s| {
                let v = z.w_one(&arc_of(s)?);
                v.snap(0.0)?;
                Ok(v)
            })),
            0 => CochainValued::new(1, 0, Coefficients::Integers, move |t| {
                let (z, g) = (z.clone(), t[0].clone());
                Ok(Cochain::new(0, Coefficients::Integers, move |s| {
                    Ok(z.w_bottom(&g, vertex_of(s)?))
                }))
            }),
            _ => panic!("w_k needs k ≤ 1 on the circle"),
        }
    }

    fn eta_bar(&self) -> Cochain<Circle> {
        let z = self.clone();
        Cochain::new(0, Coefficients::Reals, move |s| {
            Ok(z.eta_bar_at(vertex_of(s)?))
        })
    }

    fn eta(&self, k: usize) -> CochainValued<Circle> {
        assert_eq!(k, 0, "η_k needs k = 0 on the circle");
        let z = self.clone();
        CochainValued::constant(Cochain::new(0, Coefficients::Circle, move |s| {
            Ok(z.eta_bar_at(vertex_of(s)?))
        }))
    }

    fn volume(&self, s: &MappedSimplex<Circle>) -> Result<Q> {
        Ok(arc_of(s)?.length)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(p: i64, d: i64) -> Q {
        Q::new(p, d)
    }

    fn pt(p: i64, d: i64) -> CirclePoint {
        CirclePoint::new(q(p, d))
    }

    #[test]
    fn w_top_on_a_wrapping_arc() {
        let z = CircleZigzag::default();
        // arc 0.2 → 1.1 of length 0.9: w_1 = 0.9 − (0.1 − 0.2) = 1
        let arc = MappedSimplex::arc(CircleArc {
            start: pt(1, 5),
            length: q(9, 10),
        });
        assert_eq!(z.w_top(&arc).unwrap(), q(1, 1));
        let short = MappedSimplex::arc(CircleArc {
            start: pt(1, 5),
            length: q(1, 2),
        });
        assert_eq!(z.w_top(&short).unwrap(), q(0, 1));
    }

    #[test]
    fn w_bottom_closed_form() {
        let z = CircleZigzag::default();
        let g = Word::rotation(q(1, 2));
        assert_eq!(z.w_bottom(&g, pt(3, 4)), q(-1, 1));
        assert_eq!(z.w_bottom(&g, pt(0, 1)), q(0, 1));
        assert_eq!(z.w_bottom(&Word::rotation(q(7, 3)), pt(0, 1)), q(0, 1));
    }

    #[test]
    fn delta_one() {
        let z = CircleZigzag::default();
        let d = z.build_delta(1, &[Word::rotation(q(3, 4))]).unwrap();
        assert_eq!(
            d.terms(),
            &[(
                1,
                MappedSimplex::arc(CircleArc {
                    start: pt(0, 1),
                    length: q(3, 4)
                })
            )]
        );
        let id = z.build_delta(1, &[Word::identity()]).unwrap();
        assert!(arc_of(&id.terms()[0].1).unwrap().is_degenerate());
        assert!(z
            .delta(0)
            .coboundary()
            .eval(&[Word::identity()])
            .unwrap()
            .is_zero());
    }

    #[test]
    fn eta_bar_uses_canonical_representative() {
        let z = CircleZigzag::default();
        assert_eq!(z.eta_bar_at(pt(1, 4)), q(1, 4));
        assert_eq!(z.eta_bar_at(pt(5, 4)), q(1, 4));
    }
}
