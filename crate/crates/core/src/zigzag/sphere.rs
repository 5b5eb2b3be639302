use std::sync::Arc;

use crate::complexes::{Chain, ChainValued, Cochain, CochainValued, Coefficients};
use crate::diffeo::{SphereGenerator, Word};
use crate::error::{Error, Result};
use crate::geometry::{BaseSimplex, Manifold, MappedSimplex, Sphere, SphereForms, SpherePoint};
use crate::scalar::{frac_lift, Scalar};

use super::Zigzag;

/// Default basepoint, off every symmetry axis used by the test groups.
pub const DEFAULT_BASEPOINT: [f64; 3] = [0.48, 0.64, 0.60];

/// Zig-zag data on the sphere (`n = 2`).
///
/// * `Δ_1(g)` is the geodesic `x → g x`, `Δ_2(g_1, g_2)` the geodesic cone
///   from `x` over `g_1·Δ_1(g_2)`;
/// * `η̄_1(c) = ∫_c α`, `w_2 = Ω - dη̄_1`;
/// * `w_1(g)(c) = ∫_c (g^*α - α) - (ṽ_g(end) - ṽ_g(start))` where
///   `ṽ_g(y) = frac(∫_{x→y} (g^*α - α))`;
/// * `w_0(g_1, g_2)(y) = -(δw_1)(g_1, g_2)(x → y)`, vanishing at `x`;
/// * `η_1 = η̄_1 mod 1`, `η_0(g) = -ṽ_g mod 1`.
#[derive(Debug, Clone)]
pub struct SphereZigzag {
    inner: Arc<Inner>,
}

#[derive(Debug)]
struct Inner {
    forms: SphereForms,
    x: SpherePoint,
    snap_tol: f64,
}

fn vertex_of(s: &MappedSimplex<Sphere>) -> Result<SpherePoint> {
    match &s.base {
        BaseSimplex::Vertex(p) => Ok(*p),
        _ => Err(Error::DimensionMismatch {
            expected: 0,
            found: s.dim(),
        }),
    }
}

fn require_dim(s: &MappedSimplex<Sphere>, dim: usize) -> Result<()> {
    if s.dim() != dim {
        return Err(Error::DimensionMismatch {
            expected: dim,
            found: s.dim(),
        });
    }
    Ok(())
}

impl SphereZigzag {
    pub fn new(forms: SphereForms, x: SpherePoint, snap_tol: f64) -> Result<Self> {
        if snap_tol.partial_cmp(&0.0) != Some(std::cmp::Ordering::Greater) {
            return Err(Error::Invalid("snap_tol must be positive".into()));
        }
        let eps = forms.conventions().epsilon_pole;
        if forms.pole_distance(x.vec()) < eps {
            return Err(Error::PoleProximity {
                distance: forms.pole_distance(x.vec()),
                epsilon: eps,
            });
        }
        Ok(SphereZigzag {
            inner: Arc::new(Inner { forms, x, snap_tol }),
        })
    }

    pub fn forms(&self) -> &SphereForms {
        &self.inner.forms
    }

    pub fn x(&self) -> SpherePoint {
        self.inner.x
    }

    /// The geodesic 1-simplex `x → y`.
    pub fn ray(&self, y: &SpherePoint) -> Result<MappedSimplex<Sphere>> {
        Ok(MappedSimplex::arc(Sphere::arc(&self.x(), y)?))
    }

    /// `Δ_k(g_1, …, g_k)`.
    pub fn build_delta(&self, k: usize, tuple: &[Word<SphereGenerator>]) -> Result<Chain<Sphere>> {
        if tuple.len() != k {
            return Err(Error::ArityMismatch {
                expected: k,
                found: tuple.len(),
            });
        }
        let x = self.x();
        let simplex = match k {
            0 => MappedSimplex::vertex(x),
            1 => self.ray(&tuple[0].apply(&x))?,
            2 => {
                let edge = self.ray(&tuple[1].apply(&x))?.push_forward(&tuple[0]);
                Sphere::cone_over(x, edge)?
            }
            _ => {
                return Err(Error::Invalid(format!(
                    "Δ_{k} is not defined on the sphere"
                )))
            }
        };
        Ok(Chain::from_simplex(simplex))
    }

    /// `η̄_1(c) = ∫_c α`.
    pub fn eta_bar_on(&self, s: &MappedSimplex<Sphere>) -> Result<f64> {
        self.forms().integrate_alpha(s)
    }

    /// `∫_c (g^*α - α) = ∫_{g·c} α - ∫_c α`.
    pub fn alpha_shift(&self, g: &Word<SphereGenerator>, s: &MappedSimplex<Sphere>) -> Result<f64> {
        if g.is_empty() {
            return Ok(0.0);
        }
        Ok(self.eta_bar_on(&s.push_forward(g))? - self.eta_bar_on(s)?)
    }

    /// `ṽ_g(y) ∈ [0, 1)`.
    pub fn v_tilde(&self, g: &Word<SphereGenerator>, y: &SpherePoint) -> Result<f64> {
        Ok(frac_lift(self.alpha_shift(g, &self.ray(y)?)?))
    }

    /// `w_1(g)(c)`, an integer (returned as its quadrature value).
    pub fn w_mid(&self, g: &Word<SphereGenerator>, s: &MappedSimplex<Sphere>) -> Result<f64> {
        require_dim(s, 1)?;
        let (start, end) = s.endpoints().expect("1-simplex");
        let raw = self.alpha_shift(g, s)? - (self.v_tilde(g, &end)? - self.v_tilde(g, &start)?);
        raw.snap(self.snap_tol())?;
        Ok(raw)
    }

    /// `w_0(g_1, g_2)(y)`, an integer (returned as its quadrature value).
    pub fn w_bottom(
        &self,
        g1: &Word<SphereGenerator>,
        g2: &Word<SphereGenerator>,
        y: &SpherePoint,
    ) -> Result<f64> {
        let path = self.ray(y)?;
        let raw = -(self.w_mid(g2, &path)? - self.w_mid(&g1.compose(g2), &path)?
            + self.w_mid(g1, &path.push_forward(g2))?);
        raw.snap(self.snap_tol())?;
        Ok(raw)
    }
}

impl Zigzag<Sphere> for SphereZigzag {
    fn basepoint(&self) -> SpherePoint {
        self.x()
    }

    fn snap_tol(&self) -> f64 {
        self.inner.snap_tol
    }

    fn delta(&self, k: usize) -> ChainValued<Sphere> {
        assert!(k <= 2, "Δ_k needs k ≤ 2 on the sphere");
        let z = self.clone();
        ChainValued::new(k, k, move |t| z.build_delta(k, t))
    }

    fn w(&self, k: usize) -> CochainValued<Sphere> {
        let z = self.clone();
        match k {
            2 => CochainValued::constant(Cochain::new(2, Coefficients::Integers, move |s| {
                z.w_top(s)
            })),
            1 => CochainValued::new(1, 1, Coefficients::Integers, move |t| {
                let (z, g) = (z.clone(), t[0].clone());
                Ok(Cochain::new(1, Coefficients::Integers, move |s| {
                    z.w_mid(&g, s)
                }))
            }),
            0 => CochainValued::new(2, 0, Coefficients::Integers, move |t| {
                let (z, g1, g2) = (z.clone(), t[0].clone(), t[1].clone());
                Ok(Cochain::new(0, Coefficients::Integers, move |s| {
                    z.w_bottom(&g1, &g2, &vertex_of(s)?)
                }))
            }),
            _ => panic!("w_k needs k ≤ 2 on the sphere"),
        }
    }

    fn eta_bar(&self) -> Cochain<Sphere> {
        let z = self.clone();
        Cochain::new(1, Coefficients::Reals, move |s| z.eta_bar_on(s))
    }

    fn eta(&self, k: usize) -> CochainValued<Sphere> {
        let z = self.clone();
        match k {
            1 => CochainValued::constant(Cochain::new(1, Coefficients::Circle, move |s| {
                z.eta_bar_on(s)
            })),
            0 => CochainValued::new(1, 0, Coefficients::Circle, move |t| {
                let (z, g) = (z.clone(), t[0].clone());
                Ok(Cochain::new(0, Coefficients::Circle, move |s| {
                    Ok(-z.v_tilde(&g, &vertex_of(s)?)?)
                }))
            }),
            _ => panic!("η_k needs k ≤ 1 on the sphere"),
        }
    }

    fn volume(&self, s: &MappedSimplex<Sphere>) -> Result<f64> {
        self.forms().integrate_volume(s)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::sphere::octahedral_triangulation;
    use crate::geometry::FormConventions;
    use nalgebra::{Rotation3, Unit, Vector3};

    fn zigzag() -> SphereZigzag {
        let forms = SphereForms::new(FormConventions::default()).unwrap();
        SphereZigzag::new(forms, SpherePoint::new(DEFAULT_BASEPOINT).unwrap(), 1e-6).unwrap()
    }

    fn twist(axis: [f64; 3], coeffs: &[f64]) -> Word<SphereGenerator> {
        Word::single(SphereGenerator::twist(axis, coeffs.to_vec()).unwrap())
    }

    fn rot(axis: [f64; 3], turns: f64) -> Word<SphereGenerator> {
        Word::single(SphereGenerator::rotation(axis, turns).unwrap())
    }

    fn p(v: [f64; 3]) -> SpherePoint {
        SpherePoint::new(v).unwrap()
    }

    #[test]
    fn w_top_vanishes_away_from_the_pole() {
        let z = zigzag();
        let tri =
            Sphere::cone_triangle(p([0.2, 0.1, 0.9]), p([0.9, 0.3, 0.2]), p([-0.2, 0.8, 0.4]))
                .unwrap();
        assert!(z.w_top(&tri).unwrap().abs() < 1e-9);
    }

    #[test]
    fn w_top_counts_the_pole_on_a_rotated_octahedron() {
        let z = zigzag();
        let r = Rotation3::from_axis_angle(&Unit::new_normalize(Vector3::new(0.3, -0.5, 0.8)), 0.7);
        let faces = octahedral_triangulation(0, Some(r.matrix()));
        let mut total = 0;
        for [a, b, c] in faces {
            let raw = z.w_top(&Sphere::cone_triangle(a, b, c).unwrap()).unwrap();
            total += raw.snap(1e-6).unwrap().value;
        }
        assert_eq!(total, 1);
    }

    #[test]
    fn v_tilde_trivial_cases() {
        let z = zigzag();
        let y = p([0.1, -0.7, 0.4]);
        assert_eq!(z.v_tilde(&Word::identity(), &y).unwrap(), 0.0);
        let g = twist([0.0, 1.0, 0.0], &[0.1, 0.3]);
        assert_eq!(z.v_tilde(&g, &z.x()).unwrap(), 0.0);
        let arc = z.ray(&y).unwrap();
        assert_eq!(z.w_mid(&Word::identity(), &arc).unwrap(), 0.0);
        let point_arc = z.ray(&z.x()).unwrap();
        assert_eq!(z.w_mid(&g, &point_arc).unwrap(), 0.0);
    }

    #[test]
    fn delta_two_boundary_matches_coboundary_of_delta_one() {
        let z = zigzag();
        let t = [
            twist([1.0, 0.0, 0.0], &[0.05, 0.2]),
            rot([0.0, 0.3, 1.0], 0.15),
        ];
        let lhs = z.delta(1).coboundary().eval(&t).unwrap();
        let rhs = z.delta(2).boundary().eval(&t).unwrap();
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn antipodal_image_is_reported() {
        let z = zigzag();
        // half turn about an axis orthogonal to x sends x to -x
        let x = DEFAULT_BASEPOINT;
        let g = rot([0.8, -0.6, 0.0], 0.5);
        assert!(Vector3::from(x).dot(&Vector3::new(0.8, -0.6, 0.0)).abs() < 1e-15);
        assert!(matches!(
            z.build_delta(1, &[g]),
            Err(Error::AntipodalDegeneracy { .. })
        ));
    }
}
