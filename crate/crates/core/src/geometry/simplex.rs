//! Singular simplices `g ∘ σ` on the circle and the sphere.
//!
//! A [`MappedSimplex`] is a base parametrization (vertex, geodesic arc, or a
//! geodesic cone over a possibly mapped arc) followed by a prefix word. Vertices are always stored as their image point, so that
//! `g·x` and the endpoint of an arc ending at `g x` compare equal.

use std::fmt::Debug;

use super::circle::{CircleArc, CirclePoint};
use super::sphere::{SphereArc, SpherePoint, ANTIPODAL_TOL};
use crate::diffeo::{CircleRotation, Generator, SphereGenerator, Word};
use crate::error::{Error, Result};
use crate::scalar::{Scalar, Q};

pub trait Manifold: Clone + Debug + PartialEq + Send + Sync + 'static {
    type Point: Clone + Debug + PartialEq + Send + Sync + 'static;
    type Arc: Clone + Debug + PartialEq + Send + Sync + 'static;
    type Gen: Generator<Point = Self::Point>;
    type Scalar: Scalar;

    /// Dimension `n` of the manifold.
    const DIM: usize;
    const NAME: &'static str;

    /// The geodesic arc from `a` to `b`.
    fn arc(a: &Self::Point, b: &Self::Point) -> Result<Self::Arc>;

    fn arc_endpoints(arc: &Self::Arc) -> (Self::Point, Self::Point);

    /// `g · σ`.
    fn push_forward(g: &Word<Self::Gen>, s: &MappedSimplex<Self>) -> MappedSimplex<Self>;
}

#[derive(Debug, Clone, PartialEq)]
pub enum BaseSimplex<M: Manifold> {
    Vertex(M::Point),
    Arc(M::Arc),
    /// Geodesic cone from `apex` over a 1-simplex. Its faces are
    /// `edge - arc(apex, end) + arc(apex, start)`.
    Cone {
        apex: M::Point,
        edge: Box<MappedSimplex<M>>,
    },
}

#[derive(Debug, Clone, PartialEq)]
pub struct MappedSimplex<M: Manifold> {
    pub base: BaseSimplex<M>,
    pub prefix: Word<M::Gen>,
}

impl<M: Manifold> MappedSimplex<M> {
    pub fn vertex(p: M::Point) -> Self {
        MappedSimplex {
            base: BaseSimplex::Vertex(p),
            prefix: Word::identity(),
        }
    }

    pub fn arc(arc: M::Arc) -> Self {
        MappedSimplex {
            base: BaseSimplex::Arc(arc),
            prefix: Word::identity(),
        }
    }

    pub fn dim(&self) -> usize {
        match self.base {
            BaseSimplex::Vertex(_) => 0,
            BaseSimplex::Arc(_) => 1,
            BaseSimplex::Cone { .. } => 2,
        }
    }

    /// Image endpoints of a 1-simplex.
    pub fn endpoints(&self) -> Option<(M::Point, M::Point)> {
        match &self.base {
            BaseSimplex::Arc(arc) => {
                let (a, b) = M::arc_endpoints(arc);
                Some((self.prefix.apply(&a), self.prefix.apply(&b)))
            }
            _ => None,
        }
    }

    pub fn push_forward(&self, g: &Word<M::Gen>) -> Self {
        M::push_forward(g, self)
    }

    /// Signed faces, in the order `d_0, -d_1, d_2`.
    pub fn faces(&self) -> Vec<(i64, MappedSimplex<M>)> {
        let base_faces = match &self.base {
            BaseSimplex::Vertex(_) => Vec::new(),
            BaseSimplex::Arc(arc) => {
                let (a, b) = M::arc_endpoints(arc);
                vec![
                    (1, MappedSimplex::vertex(b)),
                    (-1, MappedSimplex::vertex(a)),
                ]
            }
            BaseSimplex::Cone { apex, edge } => {
                let (start, end) = edge.endpoints().expect("cone edge is an arc");
                vec![
                    (1, (**edge).clone()),
                    (-1, MappedSimplex::arc(unchecked_arc::<M>(apex, &end))),
                    (1, MappedSimplex::arc(unchecked_arc::<M>(apex, &start))),
                ]
            }
        };
        base_faces
            .into_iter()
            .map(|(c, f)| (c, f.push_forward(&self.prefix)))
            .collect()
    }
}

fn unchecked_arc<M: Manifold>(a: &M::Point, b: &M::Point) -> M::Arc {
    M::arc(a, b).expect("cone faces were validated at construction")
}

/// The circle `R/Z` with exact rational coordinates.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Circle;

impl Manifold for Circle {
    type Point = CirclePoint;
    type Arc = CircleArc;
    type Gen = CircleRotation;
    type Scalar = Q;

    const DIM: usize = 1;
    const NAME: &'static str = "circle";

    fn arc(a: &CirclePoint, b: &CirclePoint) -> Result<CircleArc> {
        Ok(CircleArc::geodesic(*a, *b))
    }

    fn arc_endpoints(arc: &CircleArc) -> (CirclePoint, CirclePoint) {
        (arc.start, arc.end())
    }

    /// Rotations act exactly, so images are stored in base form.
    fn push_forward(g: &Word<CircleRotation>, s: &MappedSimplex<Circle>) -> MappedSimplex<Circle> {
        let turns = g.total_turns();
        let base = match &s.base {
            BaseSimplex::Vertex(p) => BaseSimplex::Vertex(p.rotate(turns)),
            BaseSimplex::Arc(arc) => BaseSimplex::Arc(CircleArc {
                start: arc.start.rotate(turns),
                length: arc.length,
            }),
            BaseSimplex::Cone { apex, edge } => BaseSimplex::Cone {
                apex: apex.rotate(turns),
                edge: Box::new(edge.push_forward(g)),
            },
        };
        MappedSimplex {
            base,
            prefix: Word::identity(),
        }
    }
}

/// The unit 2-sphere.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Sphere;

impl Manifold for Sphere {
    type Point = SpherePoint;
    type Arc = SphereArc;
    type Gen = SphereGenerator;
    type Scalar = f64;

    const DIM: usize = 2;
    const NAME: &'static str = "sphere";

    fn arc(a: &SpherePoint, b: &SpherePoint) -> Result<SphereArc> {
        SphereArc::new(*a, *b)
    }

    fn arc_endpoints(arc: &SphereArc) -> (SpherePoint, SpherePoint) {
        (arc.a, arc.b)
    }

    fn push_forward(g: &Word<SphereGenerator>, s: &MappedSimplex<Sphere>) -> MappedSimplex<Sphere> {
        match &s.base {
            BaseSimplex::Vertex(p) => MappedSimplex::vertex(g.apply(&p.clone())),
            _ => MappedSimplex {
                base: s.base.clone(),
                prefix: g.compose(&s.prefix),
            },
        }
    }
}

/// Points of a cone edge screened for antipodality with the apex.
const CONE_SCREEN_SAMPLES: usize = 256;

impl Sphere {
    /// Geodesic cone from `apex` over the 1-simplex `edge`.
    pub fn cone_over(
        apex: SpherePoint,
        edge: MappedSimplex<Sphere>,
    ) -> Result<MappedSimplex<Sphere>> {
        let BaseSimplex::Arc(arc) = &edge.base else {
            return Err(Error::DimensionMismatch {
                expected: 1,
                found: edge.dim(),
            });
        };
        let mut gap = f64::INFINITY;
        for i in 0..=CONE_SCREEN_SAMPLES {
            let (p, _) = arc.eval(i as f64 / CONE_SCREEN_SAMPLES as f64);
            let q = edge.prefix.apply(&SpherePoint::from_raw(p));
            gap = gap.min(apex.antipodal_gap(&q));
        }
        if gap < ANTIPODAL_TOL {
            return Err(Error::AntipodalDegeneracy { gap });
        }
        Ok(MappedSimplex {
            base: BaseSimplex::Cone {
                apex,
                edge: Box::new(edge),
            },
            prefix: Word::identity(),
        })
    }

    /// Geodesic triangle `(v0, v1, v2)` filled as the cone from `v0`.
    pub fn cone_triangle(
        v0: SpherePoint,
        v1: SpherePoint,
        v2: SpherePoint,
    ) -> Result<MappedSimplex<Sphere>> {
        let edge = MappedSimplex::arc(SphereArc::new(v1, v2)?);
        SphereArc::new(v0, v1)?;
        SphereArc::new(v0, v2)?;
        Sphere::cone_over(v0, edge)
    }
}
