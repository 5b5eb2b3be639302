//! Run configuration, word files and evaluation requests.

use std::collections::BTreeMap;
use std::path::Path;

use serde::{Deserialize, Serialize};
use serde_json::Value;
use sha2::{Digest, Sha256};

use crate::cocycles::CocycleKind;
use crate::diffeo::{GeneratorJson, GeneratorSpec, SphereGenerator, Word, WordSpec};
use crate::error::{Error, Result};
use crate::geometry::sphere::ANTIPODAL_TOL;
use crate::geometry::{CirclePoint, FormConventions, QuadConfig, SphereForms, SpherePoint};
use crate::grouphomology::DEFAULT_CAP;
use crate::sampling::{default_sphere_pool, CircleSampler, SphereSampler};
use crate::scalar::{parse_rational, Q};
use crate::zigzag::{CircleZigzag, SphereZigzag, DEFAULT_BASEPOINT};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ManifoldKind {
    Circle,
    Sphere,
}

/// The basepoint, a rational string on the circle or a vector on the sphere.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Basepoint {
    Circle(String),
    Sphere([f64; 3]),
}

fn default_pole() -> [f64; 3] {
    [0.0, 0.0, -1.0]
}

fn default_orientation() -> f64 {
    1.0
}

fn default_tol() -> f64 {
    1e-6
}

fn default_word_length() -> usize {
    4
}

fn default_denominator() -> i64 {
    60
}

fn default_cap() -> usize {
    DEFAULT_CAP
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Config {
    pub manifold: ManifoldKind,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub basepoint: Option<Basepoint>,
    #[serde(default = "default_pole")]
    pub pole: [f64; 3],
    #[serde(default = "default_orientation")]
    pub orientation: f64,
    #[serde(default)]
    pub quadrature: QuadConfig,
    #[serde(default = "default_tol")]
    pub snap_tol: f64,
    #[serde(default = "default_tol")]
    pub epsilon_pole: f64,
    #[serde(default)]
    pub seed: u64,
    /// Generators for random words; the built-in sphere pool if absent.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub generator_pool: Option<Vec<GeneratorSpec>>,
    #[serde(default = "default_word_length")]
    pub max_word_length: usize,
    /// Largest denominator of random circle rotations.
    #[serde(default = "default_denominator")]
    pub max_denominator: i64,
    /// Cap on `|G|^{d+1}` for bar-complex homology.
    #[serde(default = "default_cap")]
    pub cap: usize,
}

impl Config {
    pub fn circle() -> Self {
        Config::new(ManifoldKind::Circle)
    }

    pub fn sphere() -> Self {
        Config::new(ManifoldKind::Sphere)
    }

    fn new(manifold: ManifoldKind) -> Self {
        Config {
            manifold,
            basepoint: None,
            pole: default_pole(),
            orientation: default_orientation(),
            quadrature: QuadConfig::default(),
            snap_tol: default_tol(),
            epsilon_pole: default_tol(),
            seed: 0,
            generator_pool: None,
            max_word_length: default_word_length(),
            max_denominator: default_denominator(),
            cap: default_cap(),
        }
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let c: Config =
            serde_json::from_str(text).map_err(|e| Error::Parse(format!("config: {e}")))?;
        c.validate()?;
        Ok(c)
    }

    pub fn load(path: &Path) -> Result<Self> {
        Self::from_json(&read(path)?)
    }

    pub fn validate(&self) -> Result<()> {
        let positive = [
            ("snap_tol", self.snap_tol),
            ("epsilon_pole", self.epsilon_pole),
            ("quadrature.tol", self.quadrature.tol),
        ];
        for (name, v) in positive {
            if !(v > 0.0 && v.is_finite()) {
                return Err(Error::Parse(format!("config: {name} must be positive")));
            }
        }
        if self.quadrature.order == 0 || self.max_word_length == 0 || self.max_denominator <= 0 {
            return Err(Error::Parse(
                "config: quadrature.order, max_word_length and max_denominator must be positive"
                    .into(),
            ));
        }
        match (&self.manifold, &self.basepoint) {
            (ManifoldKind::Circle, Some(Basepoint::Sphere(_)))
            | (ManifoldKind::Sphere, Some(Basepoint::Circle(_))) => {
                return Err(Error::Parse(
                    "config: basepoint does not match the manifold".into(),
                ))
            }
            _ => {}
        }
        if self.manifold == ManifoldKind::Circle {
            if let Some(pool) = &self.generator_pool {
                if !pool.is_empty() {
                    return Err(Error::Parse(
                        "config: generator_pool applies to the sphere only".into(),
                    ));
                }
            }
        }
        Ok(())
    }

    /// Hex SHA-256 of the canonical JSON form.
    pub fn hash(&self) -> String {
        let canonical = serde_json::to_string(self).expect("config serializes");
        hex::encode(Sha256::digest(canonical.as_bytes()))
    }

    pub fn circle_basepoint(&self) -> Result<CirclePoint> {
        match &self.basepoint {
            None => Ok(CirclePoint::new(Q::from_integer(0))),
            Some(Basepoint::Circle(s)) => Ok(CirclePoint::new(parse_rational(s)?)),
            Some(Basepoint::Sphere(_)) => Err(Error::Parse(
                "config: circle basepoint must be a rational string".into(),
            )),
        }
    }

    pub fn sphere_basepoint(&self) -> Result<SpherePoint> {
        match &self.basepoint {
            None => SpherePoint::new(DEFAULT_BASEPOINT),
            Some(Basepoint::Sphere(v)) => SpherePoint::new(*v),
            Some(Basepoint::Circle(_)) => Err(Error::Parse(
                "config: sphere basepoint must be a vector".into(),
            )),
        }
    }

    pub fn conventions(&self) -> FormConventions {
        FormConventions {
            pole: self.pole,
            orientation: self.orientation,
            quadrature: self.quadrature,
            epsilon_pole: self.epsilon_pole,
        }
    }

    pub fn circle_zigzag(&self) -> Result<CircleZigzag> {
        Ok(CircleZigzag::new(self.circle_basepoint()?))
    }

    pub fn sphere_zigzag(&self) -> Result<SphereZigzag> {
        let forms = SphereForms::new(self.conventions())?;
        SphereZigzag::new(forms, self.sphere_basepoint()?, self.snap_tol)
    }

    pub fn circle_sampler(&self) -> CircleSampler {
        CircleSampler {
            max_denominator: self.max_denominator,
        }
    }

    pub fn sphere_pool(&self) -> Result<Vec<SphereGenerator>> {
        match &self.generator_pool {
            None => Ok(default_sphere_pool()),
            Some(pool) if pool.is_empty() => {
                Err(Error::Parse("config: generator_pool is empty".into()))
            }
            Some(pool) => pool.iter().map(SphereGenerator::from_spec).collect(),
        }
    }

    pub fn sphere_sampler(&self) -> Result<SphereSampler> {
        Ok(SphereSampler {
            pool: self.sphere_pool()?,
            max_word_length: self.max_word_length,
        })
    }

    /// Pool generators (and inverses) sending the basepoint close to its
    /// antipode.
    pub fn basepoint_warnings(&self) -> Result<Vec<String>> {
        if self.manifold != ManifoldKind::Sphere {
            return Ok(Vec::new());
        }
        let x = self.sphere_basepoint()?;
        let mut out = Vec::new();
        for (i, g) in self.sphere_pool()?.into_iter().enumerate() {
            let w = Word::single(g);
            for (name, h) in [("", w.clone()), ("^-1", w.invert())] {
                let gap = x.antipodal_gap(&h.apply(&x));
                if gap < 1e3 * ANTIPODAL_TOL {
                    out.push(format!(
                        "generator {i}{name} sends the basepoint within {gap:e} of its antipode"
                    ));
                }
            }
        }
        Ok(out)
    }
}

pub fn read(path: &Path) -> Result<String> {
    std::fs::read_to_string(path).map_err(|e| Error::Parse(format!("{}: {e}", path.display())))
}

/// Named words; `"id"` is always the identity.
#[derive(Debug, Clone, PartialEq)]
pub struct WordTable<G> {
    words: BTreeMap<String, Word<G>>,
}

impl<G: GeneratorJson> WordTable<G> {
    pub fn from_json(text: &str) -> Result<Self> {
        let raw: BTreeMap<String, WordSpec> =
            serde_json::from_str(text).map_err(|e| Error::Parse(format!("words: {e}")))?;
        let mut words = BTreeMap::new();
        words.insert("id".to_string(), Word::identity());
        for (name, spec) in raw {
            let w =
                Word::from_spec(&spec).map_err(|e| Error::Parse(format!("word {name:?}: {e}")))?;
            words.insert(name, w);
        }
        Ok(WordTable { words })
    }

    pub fn get(&self, name: &str) -> Result<&Word<G>> {
        self.words
            .get(name)
            .ok_or_else(|| Error::Parse(format!("unknown word {name:?}")))
    }

    pub fn tuple(&self, names: &[String]) -> Result<Vec<Word<G>>> {
        names.iter().map(|n| self.get(n).cloned()).collect()
    }
}

/// `{"kind": "c", "k": 0, "tuples": [["a", "b"], …]}`.
#[derive(Debug, Clone, PartialEq, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct EvalRequest {
    #[serde(deserialize_with = "kind_from_str")]
    pub kind: CocycleKind,
    #[serde(default)]
    pub k: usize,
    pub tuples: Vec<Vec<String>>,
}

fn kind_from_str<'de, D: serde::Deserializer<'de>>(
    d: D,
) -> std::result::Result<CocycleKind, D::Error> {
    let s = String::deserialize(d)?;
    s.parse().map_err(serde::de::Error::custom)
}

impl EvalRequest {
    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::Parse(format!("request: {e}")))
    }

    /// Checks every tuple has the arity of the requested cocycle.
    pub fn validate(&self, n: usize) -> Result<()> {
        let arity = self.kind.degree(n);
        for (i, t) in self.tuples.iter().enumerate() {
            if t.len() != arity {
                return Err(Error::Parse(format!(
                    "request: tuple {i} has {} words, {}_{} needs {arity}",
                    t.len(),
                    self.kind,
                    self.k
                )));
            }
        }
        Ok(())
    }
}

/// Tool version embedded in reports.
pub const VERSION: &str = env!("CARGO_PKG_VERSION");

/// `{"kind": …, "message": …}` for an error.
pub fn error_json(e: &Error) -> Value {
    serde_json::json!({ "kind": e.kind(), "message": e.to_string() })
}
