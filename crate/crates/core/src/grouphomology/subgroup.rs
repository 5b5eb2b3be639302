//! Finite rotation groups with exact multiplication tables.

use nalgebra::{Matrix3, Vector3};

use super::bar::BarGroup;
use crate::diffeo::{CircleRotation, Generator, SphereGenerator, Word};
use crate::error::{Error, Result};
use crate::scalar::{frac_lift, Q};

/// Tolerance for identifying products of rotation matrices.
const MATRIX_TOL: f64 = 1e-9;

/// A finite group of rotations given by words and a multiplication table.
#[derive(Debug, Clone)]
pub struct FiniteSubgroup<G> {
    pub label: String,
    pub elements: Vec<Word<G>>,
    /// `table[i][j]` is the index of `elements[i] · elements[j]`.
    pub table: Vec<Vec<usize>>,
    pub identity: usize,
}

impl<G: Generator> FiniteSubgroup<G> {
    /// Builds the table from an exact equality on group elements.
    fn from_elements<K: PartialEq>(
        label: String,
        elements: Vec<Word<G>>,
        key: impl Fn(&Word<G>) -> K,
    ) -> Result<Self> {
        let keys: Vec<K> = elements.iter().map(&key).collect();
        let find = |w: &Word<G>| {
            let k = key(w);
            keys.iter().position(|e| *e == k)
        };
        let identity = find(&Word::identity())
            .ok_or_else(|| Error::Invalid(format!("{label}: no identity")))?;
        let mut table = Vec::with_capacity(elements.len());
        for a in &elements {
            let row = elements
                .iter()
                .map(|b| {
                    find(&a.compose(b))
                        .ok_or_else(|| Error::Invalid(format!("{label}: not closed")))
                })
                .collect::<Result<Vec<_>>>()?;
            table.push(row);
        }
        Ok(FiniteSubgroup {
            label,
            elements,
            table,
            identity,
        })
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn inverse(&self, i: usize) -> usize {
        self.table[i]
            .iter()
            .position(|&j| j == self.identity)
            .expect("group has inverses")
    }

    /// Words for a tuple of element indices.
    pub fn words(&self, tuple: &[usize]) -> Vec<Word<G>> {
        tuple.iter().map(|&i| self.elements[i].clone()).collect()
    }

    /// Index of `g^e` for the element with index `g`.
    pub fn power(&self, g: usize, e: usize) -> usize {
        (0..e).fold(self.identity, |acc, _| self.table[acc][g])
    }
}

impl<G: Sync> BarGroup for FiniteSubgroup<G>
where
    G: Send,
{
    type Elem = usize;

    fn mul(&self, a: &usize, b: &usize) -> usize {
        self.table[*a][*b]
    }
}

impl FiniteSubgroup<CircleRotation> {
    /// `Z/m ⊂ SO(2)` generated by `R_{1/m}`.
    pub fn cyclic(m: usize) -> Result<Self> {
        if m == 0 {
            return Err(Error::Invalid("cyclic order must be positive".into()));
        }
        let elements = (0..m)
            .map(|j| {
                if j == 0 {
                    Word::identity()
                } else {
                    Word::rotation(Q::new(j as i64, m as i64))
                }
            })
            .collect();
        Self::from_elements(format!("cyclic:{m}"), elements, |w| {
            frac_lift(w.total_turns())
        })
    }

    /// Parses `"cyclic:m"` or `"trivial"`.
    pub fn parse(spec: &str) -> Result<Self> {
        let parts: Vec<&str> = spec.trim().split(':').collect();
        match parts.as_slice() {
            ["trivial"] => Self::cyclic(1),
            ["cyclic", m] => Self::cyclic(parse_order(m)?),
            _ => Err(Error::Parse(format!(
                "unsupported circle subgroup {spec:?} (expected cyclic:m)"
            ))),
        }
    }
}

fn matrix_key(w: &Word<SphereGenerator>) -> RotationKey {
    RotationKey(w.rotation_matrix().expect("rotation words only"))
}

/// Rotation matrices compared up to rounding.
struct RotationKey(Matrix3<f64>);

impl PartialEq for RotationKey {
    fn eq(&self, other: &Self) -> bool {
        (self.0 - other.0).abs().max() < MATRIX_TOL
    }
}

fn rotation(axis: [f64; 3], turns: f64) -> Word<SphereGenerator> {
    Word::single(SphereGenerator::rotation(axis, turns).expect("nonzero axis"))
}

impl FiniteSubgroup<SphereGenerator> {
    /// `Z/m` of rotations about `axis`.
    pub fn cyclic(m: usize, axis: [f64; 3]) -> Result<Self> {
        if m == 0 {
            return Err(Error::Invalid("cyclic order must be positive".into()));
        }
        SphereGenerator::rotation(axis, 0.0)?;
        let elements = (0..m)
            .map(|j| {
                if j == 0 {
                    Word::identity()
                } else {
                    rotation(axis, j as f64 / m as f64)
                }
            })
            .collect();
        let label = format!("cyclic:{m}:axis={},{},{}", axis[0], axis[1], axis[2]);
        Self::from_elements(label, elements, matrix_key)
    }

    /// Half turns about the three coordinate axes.
    pub fn klein4() -> Result<Self> {
        let elements = vec![
            Word::identity(),
            rotation([1.0, 0.0, 0.0], 0.5),
            rotation([0.0, 1.0, 0.0], 0.5),
            rotation([0.0, 0.0, 1.0], 0.5),
        ];
        Self::from_elements("klein4".into(), elements, matrix_key)
    }

    /// The dihedral group of order `2m`: rotations about `z` and half turns
    /// about `m` axes in the `xy`-plane.
    pub fn dihedral(m: usize) -> Result<Self> {
        if m == 0 {
            return Err(Error::Invalid("dihedral order must be positive".into()));
        }
        let mut elements: Vec<Word<SphereGenerator>> = (0..m)
            .map(|j| {
                if j == 0 {
                    Word::identity()
                } else {
                    rotation([0.0, 0.0, 1.0], j as f64 / m as f64)
                }
            })
            .collect();
        for j in 0..m {
            let phi = std::f64::consts::PI * j as f64 / m as f64;
            elements.push(rotation([phi.cos(), phi.sin(), 0.0], 0.5));
        }
        Self::from_elements(format!("dihedral:{m}"), elements, matrix_key)
    }

    /// Parses `"cyclic:m"`, `"cyclic:m:axis=x,y,z"`, `"klein4"`, `"dihedral:m"`
    /// or `"trivial"`.
    pub fn parse(spec: &str) -> Result<Self> {
        let parts: Vec<&str> = spec.trim().split(':').collect();
        match parts.as_slice() {
            ["trivial"] => Self::cyclic(1, [0.0, 0.0, 1.0]),
            ["klein4"] => Self::klein4(),
            ["dihedral", m] => Self::dihedral(parse_order(m)?),
            ["cyclic", m] => Self::cyclic(parse_order(m)?, [0.0, 0.0, 1.0]),
            ["cyclic", m, axis] => {
                let axis = axis
                    .strip_prefix("axis=")
                    .ok_or_else(|| Error::Parse(format!("expected axis=x,y,z in {spec:?}")))?;
                let coords = axis
                    .split(',')
                    .map(|c| {
                        c.trim()
                            .parse::<f64>()
                            .map_err(|_| Error::Parse(format!("bad axis in {spec:?}")))
                    })
                    .collect::<Result<Vec<_>>>()?;
                let axis: [f64; 3] = coords.try_into().map_err(|_| {
                    Error::Parse(format!("axis needs three coordinates in {spec:?}"))
                })?;
                if !Vector3::from(axis).iter().all(|c| c.is_finite()) {
                    return Err(Error::Parse(format!("bad axis in {spec:?}")));
                }
                Self::cyclic(parse_order(m)?, axis)
            }
            _ => Err(Error::Parse(format!("unsupported subgroup {spec:?}"))),
        }
    }
}

fn parse_order(s: &str) -> Result<usize> {
    s.trim()
        .parse()
        .map_err(|_| Error::Parse(format!("bad group order {s:?}")))
}
