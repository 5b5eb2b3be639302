//! Volume-preserving diffeomorphisms as words in closed-form generators.
//!
//! A word `s_1 s_2 ... s_m` is the composite `s_1 ∘ s_2 ∘ ... ∘ s_m`, so the
//! rightmost letter acts first and `u.compose(&v)` is the group product `uv`.
//! Words are never simplified: `g g⁻¹` stays two letters.

use std::f64::consts::TAU;
use std::fmt::Debug;

use nalgebra::{Matrix3, Rotation3, Unit, Vector3};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::geometry::circle::CirclePoint;
use crate::geometry::sphere::SpherePoint;
use crate::scalar::{format_rational, parse_rational, Q};

/// Highest polynomial degree accepted for twist profiles.
pub const MAX_TWIST_DEGREE: usize = 8;

pub trait Generator: Clone + Debug + PartialEq + Send + Sync + 'static {
    type Point: Clone + Debug + PartialEq + Send + Sync + 'static;

    fn act(&self, inverse: bool, p: &Self::Point) -> Self::Point;
}

#[derive(Debug, Clone, PartialEq)]
pub struct Letter<G> {
    pub generator: G,
    pub inverse: bool,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Word<G> {
    letters: Vec<Letter<G>>,
}

impl<G> Default for Word<G> {
    fn default() -> Self {
        Word {
            letters: Vec::new(),
        }
    }
}

impl<G: Generator> Word<G> {
    pub fn identity() -> Self {
        Self::default()
    }

    pub fn single(generator: G) -> Self {
        Word {
            letters: vec![Letter {
                generator,
                inverse: false,
            }],
        }
    }

    pub fn from_letters(letters: Vec<Letter<G>>) -> Self {
        Word { letters }
    }

    pub fn letters(&self) -> &[Letter<G>] {
        &self.letters
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    /// The product `self · other`.
    pub fn compose(&self, other: &Self) -> Self {
        let mut letters = Vec::with_capacity(self.len() + other.len());
        letters.extend_from_slice(&self.letters);
        letters.extend_from_slice(&other.letters);
        Word { letters }
    }

    /// Reversed word with every exponent flipped.
    pub fn invert(&self) -> Self {
        Word {
            letters: self
                .letters
                .iter()
                .rev()
                .map(|l| Letter {
                    generator: l.generator.clone(),
                    inverse: !l.inverse,
                })
                .collect(),
        }
    }

    pub fn apply(&self, p: &G::Point) -> G::Point {
        self.letters
            .iter()
            .rev()
            .fold(p.clone(), |q, l| l.generator.act(l.inverse, &q))
    }
}

/// Product of a tuple of words, left to right.
pub fn product<G: Generator>(words: &[Word<G>]) -> Word<G> {
    words.iter().fold(Word::identity(), |acc, w| acc.compose(w))
}

/// Rotation of the circle by a rational number of turns.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CircleRotation {
    pub turns: Q,
}

impl Generator for CircleRotation {
    type Point = CirclePoint;

    fn act(&self, inverse: bool, p: &CirclePoint) -> CirclePoint {
        let s = if inverse { -self.turns } else { self.turns };
        p.rotate(s)
    }
}

impl Word<CircleRotation> {
    pub fn rotation(turns: Q) -> Self {
        Word::single(CircleRotation { turns })
    }

    /// Signed total rotation in turns (not reduced mod 1).
    pub fn total_turns(&self) -> Q {
        self.letters.iter().fold(Q::from_integer(0), |acc, l| {
            if l.inverse {
                acc - l.generator.turns
            } else {
                acc + l.generator.turns
            }
        })
    }
}

/// Generators of area-preserving maps of the unit sphere.
#[derive(Debug, Clone, PartialEq)]
pub enum SphereGenerator {
    /// Rigid rotation about `axis` by `turns` full turns.
    AxisRotation { axis: Vector3<f64>, turns: f64 },
    /// `(z, φ) ↦ (z, φ + 2π h(z))` in cylindrical coordinates about `axis`,
    /// where `h(z) = Σ coeffs[i] z^i` is measured in turns.
    Twist {
        axis: Vector3<f64>,
        coeffs: Vec<f64>,
    },
}

fn unit_axis(axis: [f64; 3]) -> Result<Vector3<f64>> {
    let v = Vector3::from(axis);
    let n = v.norm();
    if !(n.is_finite() && n > 1e-12) {
        return Err(Error::Invalid(format!("degenerate axis {axis:?}")));
    }
    // dividing a unit vector by its norm can move the last bit
    if (n - 1.0).abs() <= 4.0 * f64::EPSILON {
        return Ok(v);
    }
    Ok(v / n)
}

fn polynomial(coeffs: &[f64], z: f64) -> (f64, f64) {
    let mut h = 0.0;
    let mut dh = 0.0;
    for &c in coeffs.iter().rev() {
        dh = dh * z + h;
        h = h * z + c;
    }
    (h, dh)
}

fn rotate(axis: &Vector3<f64>, angle: f64, p: &Vector3<f64>) -> (Vector3<f64>, Matrix3<f64>) {
    let r = Rotation3::from_axis_angle(&Unit::new_unchecked(*axis), angle);
    (r * p, *r.matrix())
}

impl SphereGenerator {
    pub fn rotation(axis: [f64; 3], turns: f64) -> Result<Self> {
        Ok(SphereGenerator::AxisRotation {
            axis: unit_axis(axis)?,
            turns,
        })
    }

    pub fn twist(axis: [f64; 3], coeffs: Vec<f64>) -> Result<Self> {
        if coeffs.len() > MAX_TWIST_DEGREE + 1 {
            return Err(Error::Invalid(format!(
                "twist profile of degree {} exceeds {MAX_TWIST_DEGREE}",
                coeffs.len() - 1
            )));
        }
        Ok(SphereGenerator::Twist {
            axis: unit_axis(axis)?,
            coeffs,
        })
    }

    pub fn is_rotation(&self) -> bool {
        matches!(self, SphereGenerator::AxisRotation { .. })
    }

    /// Image of `p` and the ambient differential at `p`.
    pub fn act_with_jacobian(
        &self,
        inverse: bool,
        p: &Vector3<f64>,
    ) -> (Vector3<f64>, Matrix3<f64>) {
        let sign = if inverse { -1.0 } else { 1.0 };
        match self {
            SphereGenerator::AxisRotation { axis, turns } => rotate(axis, sign * TAU * turns, p),
            SphereGenerator::Twist { axis, coeffs } => {
                let (h, dh) = polynomial(coeffs, axis.dot(p));
                let (q, r) = rotate(axis, sign * TAU * h, p);
                // d/dz of the rotation angle feeds back along the axis direction.
                let jac = r + (axis.cross(&q) * (sign * TAU * dh)) * axis.transpose();
                (q, jac)
            }
        }
    }

    fn act_vec(&self, inverse: bool, p: &Vector3<f64>) -> Vector3<f64> {
        let sign = if inverse { -1.0 } else { 1.0 };
        match self {
            SphereGenerator::AxisRotation { axis, turns } => rotate(axis, sign * TAU * turns, p).0,
            SphereGenerator::Twist { axis, coeffs } => {
                let (h, _) = polynomial(coeffs, axis.dot(p));
                rotate(axis, sign * TAU * h, p).0
            }
        }
    }
}

impl Generator for SphereGenerator {
    type Point = SpherePoint;

    fn act(&self, inverse: bool, p: &SpherePoint) -> SpherePoint {
        SpherePoint::from_raw(self.act_vec(inverse, p.vec()))
    }
}

/// The differential of a word at a point, as an ambient 3×3 matrix.
#[derive(Debug, Clone, PartialEq)]
pub struct TangentMap {
    pub source: Vector3<f64>,
    pub image: Vector3<f64>,
    pub jacobian: Matrix3<f64>,
}

impl TangentMap {
    pub fn push(&self, v: &Vector3<f64>) -> Vector3<f64> {
        self.jacobian * v
    }

    /// Determinant of the differential between oriented orthonormal frames
    /// of the source and image tangent planes.
    pub fn frame_determinant(&self) -> f64 {
        let (e1, e2) = tangent_frame(&self.source);
        let n = self.image.normalize();
        n.dot(&self.push(&e1).cross(&self.push(&e2)))
    }
}

/// An oriented orthonormal frame `(e1, e2)` of the tangent plane at `p`
/// with `e1 × e2 = p`.
pub fn tangent_frame(p: &Vector3<f64>) -> (Vector3<f64>, Vector3<f64>) {
    let p = p.normalize();
    let helper = if p.x.abs() < 0.9 {
        Vector3::x()
    } else {
        Vector3::y()
    };
    let e1 = helper.cross(&p).normalize();
    let e2 = p.cross(&e1);
    (e1, e2)
}

impl Word<SphereGenerator> {
    pub fn apply_with_jacobian(&self, p: &Vector3<f64>) -> (Vector3<f64>, Matrix3<f64>) {
        self.letters
            .iter()
            .rev()
            .fold((*p, Matrix3::identity()), |(q, j), l| {
                let (q2, dj) = l.generator.act_with_jacobian(l.inverse, &q);
                (q2, dj * j)
            })
    }

    pub fn differential(&self, p: &SpherePoint) -> TangentMap {
        let (image, jacobian) = self.apply_with_jacobian(p.vec());
        TangentMap {
            source: *p.vec(),
            image,
            jacobian,
        }
    }

    /// True if every letter is a rigid rotation.
    pub fn is_rotation(&self) -> bool {
        self.letters.iter().all(|l| l.generator.is_rotation())
    }

    /// The rotation matrix of a rotation-only word.
    pub fn rotation_matrix(&self) -> Option<Matrix3<f64>> {
        self.is_rotation()
            .then(|| self.apply_with_jacobian(&Vector3::zeros()).1)
    }
}

/// JSON form of a single generator, e.g.
/// `{"kind":"axis_rotation","axis":[0,0,1],"turns":0.25}`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum GeneratorSpec {
    CircleRotation { turns: String },
    AxisRotation { axis: [f64; 3], turns: f64 },
    Twist { axis: [f64; 3], coeffs: Vec<f64> },
}

fn default_exponent() -> i32 {
    1
}

fn is_default_exponent(e: &i32) -> bool {
    *e == 1
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LetterSpec {
    #[serde(flatten)]
    pub generator: GeneratorSpec,
    #[serde(
        default = "default_exponent",
        skip_serializing_if = "is_default_exponent"
    )]
    pub exponent: i32,
}

pub type WordSpec = Vec<LetterSpec>;

fn exponent_inverse(e: i32) -> Result<bool> {
    match e {
        1 => Ok(false),
        -1 => Ok(true),
        _ => Err(Error::Parse(format!("exponent must be 1 or -1, got {e}"))),
    }
}

/// Conversion between manifold-specific generators and their JSON form.
pub trait GeneratorJson: Generator {
    fn from_spec(spec: &GeneratorSpec) -> Result<Self>;
    fn to_spec(&self) -> GeneratorSpec;
}

impl GeneratorJson for CircleRotation {
    fn from_spec(spec: &GeneratorSpec) -> Result<Self> {
        match spec {
            GeneratorSpec::CircleRotation { turns } => Ok(CircleRotation {
                turns: parse_rational(turns)?,
            }),
            other => Err(Error::Parse(format!("not a circle generator: {other:?}"))),
        }
    }

    fn to_spec(&self) -> GeneratorSpec {
        GeneratorSpec::CircleRotation {
            turns: format_rational(self.turns),
        }
    }
}

impl GeneratorJson for SphereGenerator {
    fn from_spec(spec: &GeneratorSpec) -> Result<Self> {
        match spec {
            GeneratorSpec::AxisRotation { axis, turns } => SphereGenerator::rotation(*axis, *turns),
            GeneratorSpec::Twist { axis, coeffs } => SphereGenerator::twist(*axis, coeffs.clone()),
            other => Err(Error::Parse(format!("not a sphere generator: {other:?}"))),
        }
    }

    fn to_spec(&self) -> GeneratorSpec {
        match self {
            SphereGenerator::AxisRotation { axis, turns } => GeneratorSpec::AxisRotation {
                axis: [axis.x, axis.y, axis.z],
                turns: *turns,
            },
            SphereGenerator::Twist { axis, coeffs } => GeneratorSpec::Twist {
                axis: [axis.x, axis.y, axis.z],
                coeffs: coeffs.clone(),
            },
        }
    }
}

impl<G: GeneratorJson> Word<G> {
    pub fn from_spec(spec: &[LetterSpec]) -> Result<Self> {
        spec.iter()
            .map(|l| {
                Ok(Letter {
                    generator: G::from_spec(&l.generator)?,
                    inverse: exponent_inverse(l.exponent)?,
                })
            })
            .collect::<Result<Vec<_>>>()
            .map(Word::from_letters)
    }

    pub fn to_spec(&self) -> WordSpec {
        self.letters
            .iter()
            .map(|l| LetterSpec {
                generator: l.generator.to_spec(),
                exponent: if l.inverse { -1 } else { 1 },
            })
            .collect()
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let spec: WordSpec = serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
        Self::from_spec(&spec)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(&self.to_spec()).expect("word serialization")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::Scalar;

    fn q(p: i64, d: i64) -> Q {
        Q::new(p, d)
    }

    #[test]
    fn circle_action_is_exact() {
        let w = Word::rotation(q(1, 3));
        assert_eq!(
            w.apply(&CirclePoint::new(q(1, 2))),
            CirclePoint::new(q(5, 6))
        );
        let id = Word::<CircleRotation>::identity();
        assert_eq!(id.apply(&CirclePoint::new(q(2, 7))).t(), q(2, 7));
    }

    #[test]
    fn quarter_turn_about_z() {
        let w = Word::single(SphereGenerator::rotation([0.0, 0.0, 1.0], 0.25).unwrap());
        let p = w.apply(&SpherePoint::new([1.0, 0.0, 0.0]).unwrap());
        assert!((p.vec() - Vector3::new(0.0, 1.0, 0.0)).norm() < 1e-12);
    }

    #[test]
    fn inverse_reverses_and_flips() {
        let t = SphereGenerator::twist([0.0, 0.0, 1.0], vec![0.0, 0.1]).unwrap();
        let r = SphereGenerator::rotation([1.0, 0.0, 0.0], 0.2).unwrap();
        let w = Word::from_letters(vec![
            Letter {
                generator: t.clone(),
                inverse: false,
            },
            Letter {
                generator: r.clone(),
                inverse: false,
            },
        ]);
        let inv = w.invert();
        assert_eq!(
            inv.letters(),
            &[
                Letter {
                    generator: r,
                    inverse: true
                },
                Letter {
                    generator: t,
                    inverse: true
                }
            ]
        );
        assert!(Word::<CircleRotation>::identity().invert().is_empty());
        assert_eq!(Word::rotation(q(1, 5)).invert().total_turns(), q(-1, 5));

        let p = SpherePoint::new([0.3, -0.4, 0.5]).unwrap();
        let back = inv.apply(&w.apply(&p));
        assert!((back.vec() - p.vec()).norm() < 1e-12);
    }

    #[test]
    fn rotation_differential_is_the_rotation() {
        let w = Word::single(SphereGenerator::rotation([0.0, 1.0, 0.0], 0.1).unwrap());
        let p = SpherePoint::new([0.0, 0.0, 1.0]).unwrap();
        let d = w.differential(&p);
        assert!((d.jacobian - w.rotation_matrix().unwrap()).norm() < 1e-14);
        assert!((d.frame_determinant() - 1.0).abs() < 1e-12);
        let id = Word::<SphereGenerator>::identity().differential(&p);
        assert_eq!(id.jacobian, Matrix3::identity());
    }

    #[test]
    fn twist_profile_degree_is_bounded() {
        assert!(SphereGenerator::twist([0.0, 0.0, 1.0], vec![0.1; 10]).is_err());
        assert!(SphereGenerator::twist([0.0, 0.0, 1.0], vec![0.1; 9]).is_ok());
        assert!(SphereGenerator::rotation([0.0, 0.0, 0.0], 0.1).is_err());
    }

    #[test]
    fn json_format() {
        let text = r#"[{"kind":"circle_rotation","turns":"1/3"},{"kind":"circle_rotation","turns":"-2/7","exponent":-1}]"#;
        let w = Word::<CircleRotation>::from_json(text).unwrap();
        assert_eq!(w.total_turns(), q(1, 3) + q(2, 7));
        assert_eq!(w.to_json(), text);

        let s = r#"[{"kind":"axis_rotation","axis":[0,0,1],"turns":0.25},{"kind":"twist","axis":[0,0,1],"coeffs":[0,0.1]}]"#;
        let w = Word::<SphereGenerator>::from_json(s).unwrap();
        assert_eq!(w.len(), 2);
        assert!(Word::<CircleRotation>::from_json(s).is_err());
        assert!(Word::<SphereGenerator>::from_json(text).is_err());
        assert!(Word::<CircleRotation>::from_json(
            "[{\"kind\":\"circle_rotation\",\"turns\":\"1/2\",\"exponent\":2}]"
        )
        .is_err());
    }

    #[test]
    fn total_turns_is_not_reduced() {
        let w = Word::rotation(q(3, 4)).compose(&Word::rotation(q(1, 2)));
        assert_eq!(w.total_turns(), q(5, 4));
        assert_eq!(w.total_turns().frac(), q(1, 4));
    }
}
