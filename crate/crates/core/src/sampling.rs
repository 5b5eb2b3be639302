//! Seeded random words, points and simplices.
//!
//! Every sample index gets its own ChaCha stream, so a sample depends only on
//! `(seed, index)` and never on how work is split across threads.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::diffeo::{CircleRotation, Letter, SphereGenerator, Word};
use crate::error::{Error, Result};
use crate::geometry::{
    Circle, CircleArc, CirclePoint, Manifold, MappedSimplex, Sphere, SpherePoint,
};
use crate::scalar::Q;

/// Attempts made per sample before a degenerate draw is reported as an error.
pub const MAX_ATTEMPTS: usize = 64;

pub type SampleRng = ChaCha8Rng;

/// The RNG for sample `index` under `seed`.
pub fn stream(seed: u64, index: u64) -> SampleRng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(index);
    rng
}

/// A drawn sample with the number of degenerate draws skipped before it.
#[derive(Debug, Clone)]
pub struct Drawn<T> {
    pub value: T,
    pub skipped: usize,
}

/// Runs `f` on the stream for `index`, redrawing while it fails with a
/// geometric degeneracy.
pub fn draw<T>(
    seed: u64,
    index: u64,
    mut f: impl FnMut(&mut SampleRng) -> Result<T>,
) -> Result<Drawn<T>> {
    let mut rng = stream(seed, index);
    let mut last = None;
    for skipped in 0..MAX_ATTEMPTS {
        match f(&mut rng) {
            Ok(value) => return Ok(Drawn { value, skipped }),
            Err(e) if e.is_geometric() => last = Some(e),
            Err(e) => return Err(e),
        }
    }
    Err(last.expect("at least one attempt"))
}

/// Random words, points and simplices on one manifold.
pub trait Sampler<M: Manifold>: Send + Sync {
    fn word(&self, rng: &mut SampleRng) -> Word<M::Gen>;

    fn point(&self, rng: &mut SampleRng) -> M::Point;

    /// A random singular simplex of dimension `dim ≤ n`, pushed forward by a
    /// random word.
    fn simplex(&self, rng: &mut SampleRng, dim: usize) -> Result<MappedSimplex<M>>;

    fn tuple(&self, rng: &mut SampleRng, len: usize) -> Vec<Word<M::Gen>> {
        (0..len).map(|_| self.word(rng)).collect()
    }
}

/// Rotations by `p/q` turns with `1 ≤ q ≤ max_denominator` and
/// `|p/q| ≤ 2`, one letter per word.
#[derive(Debug, Clone)]
pub struct CircleSampler {
    pub max_denominator: i64,
}

impl Default for CircleSampler {
    fn default() -> Self {
        CircleSampler {
            max_denominator: 60,
        }
    }
}

impl CircleSampler {
    pub fn rational(&self, rng: &mut SampleRng) -> Q {
        let q = rng.random_range(1..=self.max_denominator.max(1));
        let p = rng.random_range(-2 * q..=2 * q);
        Q::new(p, q)
    }
}

impl Sampler<Circle> for CircleSampler {
    fn word(&self, rng: &mut SampleRng) -> Word<CircleRotation> {
        Word::rotation(self.rational(rng))
    }

    fn point(&self, rng: &mut SampleRng) -> CirclePoint {
        CirclePoint::new(self.rational(rng))
    }

    fn simplex(&self, rng: &mut SampleRng, dim: usize) -> Result<MappedSimplex<Circle>> {
        let s = match dim {
            0 => MappedSimplex::vertex(self.point(rng)),
            1 => MappedSimplex::arc(CircleArc::geodesic(self.point(rng), self.point(rng))),
            _ => {
                return Err(Error::DimensionMismatch {
                    expected: 1,
                    found: dim,
                })
            }
        };
        Ok(s.push_forward(&self.word(rng)))
    }
}

/// Words of length `1..=max_word_length` over a fixed generator pool, each
/// letter inverted with probability 1/2.
#[derive(Debug, Clone)]
pub struct SphereSampler {
    pub pool: Vec<SphereGenerator>,
    pub max_word_length: usize,
}

impl Default for SphereSampler {
    fn default() -> Self {
        SphereSampler {
            pool: default_sphere_pool(),
            max_word_length: 4,
        }
    }
}

/// Rotations about skew axes and polynomial twists.
pub fn default_sphere_pool() -> Vec<SphereGenerator> {
    let rot = |axis, turns| SphereGenerator::rotation(axis, turns).expect("valid axis");
    let twist =
        |axis, coeffs: &[f64]| SphereGenerator::twist(axis, coeffs.to_vec()).expect("valid twist");
    vec![
        rot([0.0, 0.0, 1.0], 0.13),
        rot([1.0, 1.0, 0.0], 0.29),
        rot([0.3, -0.4, 0.87], 0.071),
        rot([-0.6, 0.2, 0.3], 0.41),
        twist([1.0, 0.0, 0.0], &[0.05, 0.2]),
        twist([0.0, 1.0, 1.0], &[0.0, 0.1, 0.15]),
        twist([0.2, -0.7, 0.1], &[0.11, -0.08, 0.0, 0.12]),
    ]
}

impl SphereSampler {
    /// Words built only from the rotations in the pool.
    pub fn rotations_only(&self) -> SphereSampler {
        SphereSampler {
            pool: self
                .pool
                .iter()
                .filter(|g| g.is_rotation())
                .cloned()
                .collect(),
            ..self.clone()
        }
    }
}

impl Sampler<Sphere> for SphereSampler {
    fn word(&self, rng: &mut SampleRng) -> Word<SphereGenerator> {
        assert!(!self.pool.is_empty(), "empty generator pool");
        let len = rng.random_range(1..=self.max_word_length.max(1));
        let letters = (0..len)
            .map(|_| Letter {
                generator: self.pool[rng.random_range(0..self.pool.len())].clone(),
                inverse: rng.random(),
            })
            .collect();
        Word::from_letters(letters)
    }

    /// Uniform on the sphere.
    fn point(&self, rng: &mut SampleRng) -> SpherePoint {
        let z: f64 = rng.random_range(-1.0..=1.0);
        let phi: f64 = rng.random_range(0.0..std::f64::consts::TAU);
        let r = (1.0 - z * z).max(0.0).sqrt();
        SpherePoint::new([r * phi.cos(), r * phi.sin(), z]).expect("unit vector")
    }

    fn simplex(&self, rng: &mut SampleRng, dim: usize) -> Result<MappedSimplex<Sphere>> {
        let s = match dim {
            0 => MappedSimplex::vertex(self.point(rng)),
            1 => MappedSimplex::arc(Sphere::arc(&self.point(rng), &self.point(rng))?),
            2 => Sphere::cone_triangle(self.point(rng), self.point(rng), self.point(rng))?,
            _ => {
                return Err(Error::DimensionMismatch {
                    expected: 2,
                    found: dim,
                })
            }
        };
        Ok(s.push_forward(&self.word(rng)))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn streams_are_reproducible_and_independent() {
        let s = SphereSampler::default();
        let a = s.tuple(&mut stream(7, 3), 3);
        let b = s.tuple(&mut stream(7, 3), 3);
        let c = s.tuple(&mut stream(7, 4), 3);
        assert_eq!(a, b);
        assert_ne!(a, c);
    }

    #[test]
    fn circle_rationals_respect_the_denominator_bound() {
        let s = CircleSampler {
            max_denominator: 12,
        };
        let mut rng = stream(1, 0);
        for _ in 0..200 {
            let q = s.rational(&mut rng);
            assert!(*q.denom() <= 12 && q.numer().abs() <= 2 * q.denom());
        }
    }

    #[test]
    fn rotations_only_pool() {
        let s = SphereSampler::default().rotations_only();
        let w = s.word(&mut stream(0, 0));
        assert!(w.is_rotation());
    }

    #[test]
    fn draw_skips_degenerate_attempts() {
        let mut calls = 0;
        let d = draw(0, 0, |_| {
            calls += 1;
            if calls < 3 {
                Err(Error::PoleProximity {
                    distance: 0.0,
                    epsilon: 1e-6,
                })
            } else {
                Ok(calls)
            }
        })
        .unwrap();
        assert_eq!((d.value, d.skipped), (3, 2));
        assert!(matches!(
            draw(0, 0, |_| -> Result<()> { Err(Error::NotACycle) }),
            Err(Error::NotACycle)
        ));
    }
}
