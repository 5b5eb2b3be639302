//! Numerical geometry of the unit sphere: geodesic arcs, the normalized area
//! form `Ω` (total mass 1) and its primitive `α`, which is smooth away from a
//! fixed pole `P` and has period 1 around it.
//!
//! With `N = -P` and `z = N·p`,
//!
//! ```text
//! α_p(v) = (N × p)·v / (4π (1 + z))  =  (1 - cos θ)/(4π) dφ
//! ```
//!
//! in spherical coordinates about `N`, so `dα = Ω` away from `P`.

use std::f64::consts::PI;

use nalgebra::{Matrix3, Vector3};
use serde::{Deserialize, Serialize};

use super::quadrature::{integrate_1d, integrate_2d, GaussRule, QuadConfig};
use super::simplex::{BaseSimplex, MappedSimplex, Sphere};
use crate::error::{Error, Result};

/// Pairs of points closer than this to antipodal are rejected.
pub const ANTIPODAL_TOL: f64 = 1e-9;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SpherePoint(Vector3<f64>);

impl SpherePoint {
    /// Normalizes `v` onto the unit sphere.
    pub fn new(v: [f64; 3]) -> Result<Self> {
        let v = Vector3::from(v);
        let n = v.norm();
        if !(n.is_finite() && n > 1e-12) {
            return Err(Error::Invalid(format!(
                "cannot normalize {v:?} onto the sphere"
            )));
        }
        Ok(SpherePoint(v / n))
    }

    /// Wraps a vector that is already unit up to rounding.
    pub(crate) fn from_raw(v: Vector3<f64>) -> Self {
        SpherePoint(v)
    }

    pub fn north() -> Self {
        SpherePoint(Vector3::z())
    }

    pub fn south() -> Self {
        SpherePoint(-Vector3::z())
    }

    pub fn vec(&self) -> &Vector3<f64> {
        &self.0
    }

    pub fn coords(&self) -> [f64; 3] {
        [self.0.x, self.0.y, self.0.z]
    }

    pub fn antipodal_gap(&self, other: &SpherePoint) -> f64 {
        (self.0 + other.0).norm()
    }
}

/// Constant-speed minimal geodesic from `a` to `b`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SphereArc {
    pub a: SpherePoint,
    pub b: SpherePoint,
}

impl SphereArc {
    pub fn new(a: SpherePoint, b: SpherePoint) -> Result<Self> {
        let gap = a.antipodal_gap(&b);
        if gap < ANTIPODAL_TOL {
            return Err(Error::AntipodalDegeneracy { gap });
        }
        Ok(SphereArc { a, b })
    }

    pub fn length(&self) -> f64 {
        let (a, b) = (self.a.vec(), self.b.vec());
        a.cross(b).norm().atan2(a.dot(b))
    }

    pub fn is_degenerate(&self) -> bool {
        self.a == self.b
    }

    /// Position and velocity at `t ∈ [0, 1]`.
    pub fn eval(&self, t: f64) -> (Vector3<f64>, Vector3<f64>) {
        let a = self.a.vec();
        let b = self.b.vec();
        let theta = self.length();
        if self.is_degenerate() || theta == 0.0 {
            return (*a, Vector3::zeros());
        }
        let a_n = a.normalize();
        let perp = b - a_n * a_n.dot(b);
        let e = perp / perp.norm();
        let (s, c) = (t * theta).sin_cos();
        (a_n * c + e * s, (e * c - a_n * s) * theta)
    }
}

/// Fixed choices behind `Ω` and `α`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct FormConventions {
    /// The point where `α` is singular.
    pub pole: [f64; 3],
    /// `+1` for the outward-normal orientation, `-1` for the opposite one.
    pub orientation: f64,
    pub quadrature: QuadConfig,
    /// Curves closer than this to the pole are rejected.
    pub epsilon_pole: f64,
}

impl Default for FormConventions {
    fn default() -> Self {
        FormConventions {
            pole: [0.0, 0.0, -1.0],
            orientation: 1.0,
            quadrature: QuadConfig::default(),
            epsilon_pole: 1e-6,
        }
    }
}

/// `Ω`, `α` and their integrals over singular simplices on the sphere.
#[derive(Debug, Clone)]
pub struct SphereForms {
    conventions: FormConventions,
    pole: Vector3<f64>,
    axis: Vector3<f64>,
    rule: GaussRule,
}

impl SphereForms {
    pub fn new(conventions: FormConventions) -> Result<Self> {
        let pole = *SpherePoint::new(conventions.pole)?.vec();
        if conventions.orientation != 1.0 && conventions.orientation != -1.0 {
            return Err(Error::Invalid("orientation must be 1 or -1".into()));
        }
        if !(conventions.epsilon_pole > 0.0 && conventions.quadrature.tol > 0.0) {
            return Err(Error::Invalid("tolerances must be positive".into()));
        }
        if conventions.quadrature.order == 0 {
            return Err(Error::Invalid("quadrature order must be positive".into()));
        }
        Ok(SphereForms {
            conventions,
            pole,
            axis: -pole,
            rule: GaussRule::new(conventions.quadrature.order),
        })
    }

    pub fn conventions(&self) -> &FormConventions {
        &self.conventions
    }

    pub fn pole(&self) -> SpherePoint {
        SpherePoint::from_raw(self.pole)
    }

    /// `Ω_p(u, v)`.
    pub fn omega(&self, p: &Vector3<f64>, u: &Vector3<f64>, v: &Vector3<f64>) -> f64 {
        self.conventions.orientation * Matrix3::from_columns(&[*p, *u, *v]).determinant()
            / (4.0 * PI)
    }

    pub fn pole_distance(&self, p: &Vector3<f64>) -> f64 {
        (p - self.pole).norm()
    }

    /// `α_p(v)`, failing near the pole.
    pub fn alpha(&self, p: &Vector3<f64>, v: &Vector3<f64>) -> Result<f64> {
        let distance = self.pole_distance(p);
        if distance < self.conventions.epsilon_pole {
            return Err(Error::PoleProximity {
                distance,
                epsilon: self.conventions.epsilon_pole,
            });
        }
        let denom = 4.0 * PI * (1.0 + self.axis.dot(p));
        Ok(self.conventions.orientation * self.axis.cross(p).dot(v) / denom)
    }

    /// `∫_σ α` for a singular 1-simplex.
    pub fn integrate_alpha(&self, s: &MappedSimplex<Sphere>) -> Result<f64> {
        let BaseSimplex::Arc(arc) = &s.base else {
            return Err(Error::DimensionMismatch {
                expected: 1,
                found: s.dim(),
            });
        };
        if arc.is_degenerate() {
            return Ok(0.0);
        }
        let distance = self.closest_approach(s);
        if distance < self.conventions.epsilon_pole {
            return Err(Error::PoleProximity {
                distance,
                epsilon: self.conventions.epsilon_pole,
            });
        }
        let cfg = &self.conventions.quadrature;
        if s.prefix.is_empty() {
            integrate_1d(&self.rule, cfg, 0.0, 1.0, |t| {
                let (p, dp) = arc.eval(t);
                self.alpha(&p, &dp)
            })
        } else {
            integrate_1d(&self.rule, cfg, 0.0, 1.0, |t| {
                let (p, dp) = arc.eval(t);
                let (q, jac) = s.prefix.apply_with_jacobian(&p);
                self.alpha(&q, &(jac * dp))
            })
        }
    }

    /// Smallest distance from the pole to the image of a 1-simplex.
    ///
    /// Exact for plain geodesics. For mapped arcs the image is sampled and the
    /// best sample refined by golden-section search.
    pub fn closest_approach(&self, s: &MappedSimplex<Sphere>) -> f64 {
        let BaseSimplex::Arc(arc) = &s.base else {
            return f64::INFINITY;
        };
        if s.prefix.is_empty() {
            let (a, b) = (arc.a.vec(), arc.b.vec());
            let mut best = self.pole_distance(a).min(self.pole_distance(b));
            let n = a.cross(b);
            if n.norm() > 0.0 && !arc.is_degenerate() {
                let n = n.normalize();
                let proj = self.pole - n * n.dot(&self.pole);
                if proj.norm() > 0.0 {
                    let c = proj.normalize();
                    // c lies on the arc iff it sits between a and b
                    if a.cross(&c).dot(&n) >= 0.0 && c.cross(b).dot(&n) >= 0.0 {
                        best = best.min(self.pole_distance(&c));
                    }
                } else {
                    best = best.min(2f64.sqrt());
                }
            }
            return best;
        }
        let at = |t: f64| self.pole_distance(&s.prefix.apply_with_jacobian(&arc.eval(t).0).0);
        const SAMPLES: usize = 256;
        let (mut best_i, mut best) = (0, f64::INFINITY);
        for i in 0..=SAMPLES {
            let d = at(i as f64 / SAMPLES as f64);
            if d < best {
                (best_i, best) = (i, d);
            }
        }
        let h = 1.0 / SAMPLES as f64;
        let (mut lo, mut hi) = (
            ((best_i as f64) - 1.0).max(0.0) * h,
            ((best_i as f64) + 1.0).min(SAMPLES as f64) * h,
        );
        let phi = (5f64.sqrt() - 1.0) / 2.0;
        for _ in 0..60 {
            let (m1, m2) = (hi - phi * (hi - lo), lo + phi * (hi - lo));
            if at(m1) < at(m2) {
                hi = m2;
            } else {
                lo = m1;
            }
        }
        best.min(at(0.5 * (lo + hi)))
    }

    /// `Σ c · ∫_σ α` over a list of weighted 1-simplices.
    pub fn integrate_alpha_terms(&self, terms: &[(i64, MappedSimplex<Sphere>)]) -> Result<f64> {
        terms.iter().try_fold(0.0, |acc, (c, s)| {
            Ok(acc + *c as f64 * self.integrate_alpha(s)?)
        })
    }

    /// `∫_σ Ω` for a singular 2-simplex.
    pub fn integrate_volume(&self, s: &MappedSimplex<Sphere>) -> Result<f64> {
        let BaseSimplex::Cone { apex, edge } = &s.base else {
            return Err(Error::DimensionMismatch {
                expected: 2,
                found: s.dim(),
            });
        };
        let BaseSimplex::Arc(edge_arc) = &edge.base else {
            return Err(Error::DimensionMismatch {
                expected: 1,
                found: edge.dim(),
            });
        };
        let a = apex.vec();
        let cfg = &self.conventions.quadrature;
        integrate_2d(&self.rule, cfg, (0.0, 1.0), (0.0, 1.0), |s_par, t_par| {
            let (g, dg) = edge_arc.eval(t_par);
            let (q, dq) = if edge.prefix.is_empty() {
                (g, dg)
            } else {
                let (q, jac) = edge.prefix.apply_with_jacobian(&g);
                (q, jac * dg)
            };
            let u = a * (1.0 - s_par) + q * s_par;
            let r = u.norm();
            if r < 0.5 * ANTIPODAL_TOL {
                return Err(Error::AntipodalDegeneracy { gap: 2.0 * r });
            }
            let f = u / r;
            let project = |w: Vector3<f64>| (w - f * f.dot(&w)) / r;
            let fs = project(q - a);
            let ft = project(dq * s_par);
            if s.prefix.is_empty() {
                Ok(self.omega(&f, &fs, &ft))
            } else {
                let (gf, jac) = s.prefix.apply_with_jacobian(&f);
                Ok(self.omega(&gf, &(jac * fs), &(jac * ft)))
            }
        })
    }
}

/// The eight faces of the octahedron `±e_i`, each subdivided `depth` times
/// into four, outward oriented, optionally rotated by `rotation`.
pub fn octahedral_triangulation(
    depth: u32,
    rotation: Option<&Matrix3<f64>>,
) -> Vec<[SpherePoint; 3]> {
    let e = |v: [f64; 3]| Vector3::from(v);
    let (x, y, z) = (e([1.0, 0.0, 0.0]), e([0.0, 1.0, 0.0]), e([0.0, 0.0, 1.0]));
    let mut faces = Vec::new();
    for sz in [1.0, -1.0] {
        for (sx, sy) in [(1.0, 1.0), (-1.0, 1.0), (-1.0, -1.0), (1.0, -1.0)] {
            let (p, q, r) = (z * sz, x * sx, y * sy);
            // outward orientation: (q - p) × (r - p) points away from the origin
            if (q - p).cross(&(r - p)).dot(&(p + q + r)) > 0.0 {
                faces.push([p, q, r]);
            } else {
                faces.push([p, r, q]);
            }
        }
    }
    for _ in 0..depth {
        faces = faces
            .into_iter()
            .flat_map(|[a, b, c]| {
                let ab = (a + b).normalize();
                let bc = (b + c).normalize();
                let ca = (c + a).normalize();
                [[a, ab, ca], [ab, b, bc], [ca, bc, c], [ab, bc, ca]]
            })
            .collect();
    }
    faces
        .into_iter()
        .map(|f| f.map(|v| SpherePoint::from_raw(rotation.map_or(v, |r| r * v))))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::simplex::Manifold;

    fn forms() -> SphereForms {
        SphereForms::new(FormConventions::default()).unwrap()
    }

    fn p(v: [f64; 3]) -> SpherePoint {
        SpherePoint::new(v).unwrap()
    }

    /// Solid angle of a geodesic triangle from l'Huilier's theorem.
    fn lhuilier(a: &Vector3<f64>, b: &Vector3<f64>, c: &Vector3<f64>) -> f64 {
        let side = |u: &Vector3<f64>, v: &Vector3<f64>| u.cross(v).norm().atan2(u.dot(v));
        let (x, y, z) = (side(b, c), side(a, c), side(a, b));
        let s = 0.5 * (x + y + z);
        let t = ((0.5 * s).tan()
            * (0.5 * (s - x)).tan()
            * (0.5 * (s - y)).tan()
            * (0.5 * (s - z)).tan())
        .sqrt();
        4.0 * t.atan()
    }

    #[test]
    fn quarter_great_circle() {
        let arc = SphereArc::new(SpherePoint::north(), p([1.0, 0.0, 0.0])).unwrap();
        assert!((arc.length() - PI / 2.0).abs() < 1e-10);
        let (end, _) = arc.eval(1.0);
        assert!((end - Vector3::x()).norm() < 1e-12);
        assert!(matches!(
            SphereArc::new(SpherePoint::north(), SpherePoint::south()),
            Err(Error::AntipodalDegeneracy { .. })
        ));
    }

    #[test]
    fn octant_has_one_eighth() {
        let f = forms();
        let (n, x, y) = (SpherePoint::north(), p([1.0, 0.0, 0.0]), p([0.0, 1.0, 0.0]));
        let tri = Sphere::cone_triangle(n, x, y).unwrap();
        let v = f.integrate_volume(&tri).unwrap();
        let oracle = lhuilier(n.vec(), x.vec(), y.vec()) / (4.0 * PI);
        assert!((oracle - 0.125).abs() < 1e-12);
        assert!((v - 0.125).abs() < 1e-8, "{v}");
    }

    #[test]
    fn random_triangles_match_lhuilier() {
        let f = forms();
        let pts = [
            [0.3, 0.2, 0.9],
            [-0.1, 0.8, 0.4],
            [0.7, -0.3, 0.2],
            [-0.5, -0.5, 0.6],
            [0.2, 0.9, -0.3],
        ];
        for i in 0..pts.len() {
            let (a, b, c) = (p(pts[i]), p(pts[(i + 1) % 5]), p(pts[(i + 2) % 5]));
            let tri = Sphere::cone_triangle(a, b, c).unwrap();
            let v = f.integrate_volume(&tri).unwrap();
            let sign = a.vec().dot(&b.vec().cross(c.vec())).signum();
            let oracle = sign * lhuilier(a.vec(), b.vec(), c.vec()) / (4.0 * PI);
            assert!((v - oracle).abs() < 1e-9, "{v} vs {oracle}");
        }
    }

    #[test]
    fn degenerate_triangle_has_no_area() {
        let f = forms();
        let x = p([0.48, 0.64, 0.6]);
        let tri = Sphere::cone_triangle(x, x, x).unwrap();
        assert_eq!(f.integrate_volume(&tri).unwrap(), 0.0);
    }

    #[test]
    fn octahedron_has_total_mass_one() {
        let f = forms();
        for depth in 0..=3 {
            let total: f64 = octahedral_triangulation(depth, None)
                .into_iter()
                .map(|[a, b, c]| {
                    f.integrate_volume(&Sphere::cone_triangle(a, b, c).unwrap())
                        .unwrap()
                })
                .sum();
            assert!((total - 1.0).abs() < 1e-8, "depth {depth}: {total}");
        }
    }

    #[test]
    fn alpha_vanishes_on_meridians() {
        let f = forms();
        let arc =
            MappedSimplex::arc(Sphere::arc(&p([0.6, 0.0, 0.8]), &p([0.8, 0.0, -0.6])).unwrap());
        assert!(f.integrate_alpha(&arc).unwrap().abs() < 1e-14);
    }

    #[test]
    fn inscribed_polygon_matches_fan_area() {
        let f = forms();
        for theta in [0.3_f64, 1.0, 2.0, 2.9] {
            let k = 5;
            let pts: Vec<SpherePoint> = (0..k)
                .map(|i| {
                    let phi = 2.0 * PI * i as f64 / k as f64;
                    p([
                        theta.sin() * phi.cos(),
                        theta.sin() * phi.sin(),
                        theta.cos(),
                    ])
                })
                .collect();
            let total: f64 = (0..k)
                .map(|i| {
                    let arc = MappedSimplex::arc(Sphere::arc(&pts[i], &pts[(i + 1) % k]).unwrap());
                    f.integrate_alpha(&arc).unwrap()
                })
                .sum();
            // Geodesic polygon inscribed in the latitude: ∮α equals the area of the fan from N.
            let fan: f64 = (0..k)
                .map(|i| {
                    let tri = Sphere::cone_triangle(SpherePoint::north(), pts[i], pts[(i + 1) % k])
                        .unwrap();
                    f.integrate_volume(&tri).unwrap()
                })
                .sum();
            assert!(
                (total - fan).abs() < 1e-9,
                "theta {theta}: {total} vs {fan}"
            );
        }
    }

    #[test]
    fn latitude_circle_closed_form() {
        // ∮α around the latitude at polar angle θ is (1 - cos θ)/2.
        let f = forms();
        let theta: f64 = 1.1;
        let cfg = QuadConfig::default();
        let rule = GaussRule::new(10);
        let v = integrate_1d(&rule, &cfg, 0.0, 1.0, |t| {
            let phi = 2.0 * PI * t;
            let pt = Vector3::new(
                theta.sin() * phi.cos(),
                theta.sin() * phi.sin(),
                theta.cos(),
            );
            let vel =
                Vector3::new(-theta.sin() * phi.sin(), theta.sin() * phi.cos(), 0.0) * (2.0 * PI);
            f.alpha(&pt, &vel)
        })
        .unwrap();
        assert!((v - (1.0 - theta.cos()) / 2.0).abs() < 1e-8);
    }

    #[test]
    fn pole_proximity_is_an_error() {
        let f = forms();
        let arc =
            MappedSimplex::arc(Sphere::arc(&p([1.0, 0.0, -1.0]), &p([-1.0, 0.0, -1.0])).unwrap());
        assert!(matches!(
            f.integrate_alpha(&arc),
            Err(Error::PoleProximity { .. })
        ));
    }
}
