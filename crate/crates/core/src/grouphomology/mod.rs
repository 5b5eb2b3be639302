//! Bar-complex homology of finite rotation groups and the pairing of group
//! cocycles with explicit cycles.

pub mod bar;
pub mod snf;
pub mod subgroup;

pub use bar::{BarChain, BarGroup, CircleRotations};
pub use snf::{smith_normal_form, IntMatrix, SmithForm, Track};
pub use subgroup::FiniteSubgroup;

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rand::Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::diffeo::Generator;
use crate::error::{Error, Result};
use crate::scalar::Scalar;
use snf::small;

/// Default cap on `|G|^{d+1}`, the number of columns of `∂_{d+1}`.
pub const DEFAULT_CAP: usize = 20736;

/// A generator of `H_d(G; Z)`.
#[derive(Debug, Clone, PartialEq)]
pub struct HomologyClass {
    /// Order of the class, `None` for a free generator.
    pub order: Option<i64>,
    pub cycle: BarChain<usize>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Homology {
    pub degree: usize,
    /// Rank of `ker ∂_d`.
    pub cycle_rank: usize,
    pub free_rank: usize,
    /// Orders of the cyclic torsion summands, each dividing the next.
    pub torsion: Vec<i64>,
    pub generators: Vec<HomologyClass>,
    pub cycle_basis: Vec<BarChain<usize>>,
}

/// Serializable summary of `H_d`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct HomologySummary {
    pub degree: usize,
    pub free_rank: usize,
    pub torsion: Vec<i64>,
    pub cycle_rank: usize,
}

impl Homology {
    pub fn summary(&self) -> HomologySummary {
        HomologySummary {
            degree: self.degree,
            free_rank: self.free_rank,
            torsion: self.torsion.clone(),
            cycle_rank: self.cycle_rank,
        }
    }

    pub fn is_trivial(&self) -> bool {
        self.free_rank == 0 && self.torsion.is_empty()
    }
}

fn tuple_of(mut index: usize, n: usize, len: usize) -> Vec<usize> {
    let mut t = vec![0; len];
    for slot in t.iter_mut().rev() {
        *slot = index % n;
        index /= n;
    }
    t
}

fn index_of(t: &[usize], n: usize) -> usize {
    t.iter().fold(0, |acc, &g| acc * n + g)
}

/// Sparse columns of `∂_d`: for each `d`-tuple the nonzero `(row, coeff)`.
fn boundary_columns<G: Generator>(group: &FiniteSubgroup<G>, d: usize) -> Vec<Vec<(usize, i64)>> {
    let n = group.order();
    (0..n.pow(d as u32))
        .map(|col| {
            let t = tuple_of(col, n, d);
            let chain = BarChain::from_terms(d, [(1, t)]).boundary(&TableGroup(&group.table));
            chain
                .terms()
                .iter()
                .map(|(c, face)| (index_of(face, n), *c))
                .collect()
        })
        .collect()
}

struct TableGroup<'a>(&'a [Vec<usize>]);

impl BarGroup for TableGroup<'_> {
    type Elem = usize;

    fn mul(&self, a: &usize, b: &usize) -> usize {
        self.0[*a][*b]
    }
}

fn chain_from_vector(degree: usize, n: usize, v: &[BigInt]) -> Result<BarChain<usize>> {
    let terms = v
        .iter()
        .enumerate()
        .filter(|(_, c)| !c.is_zero())
        .map(|(i, c)| Ok((small(c)?, tuple_of(i, n, degree))))
        .collect::<Result<Vec<_>>>()?;
    Ok(BarChain::from_terms(degree, terms))
}

/// Checks `|G|^{d+1} ≤ cap`.
pub fn check_cap(order: usize, degree: usize, cap: usize) -> Result<()> {
    let size = (order as u128).saturating_pow(degree as u32 + 1);
    if size > cap as u128 {
        return Err(Error::CapExceeded {
            size: size.min(usize::MAX as u128) as usize,
            cap,
        });
    }
    Ok(())
}

/// `H_d(G; Z)` from the Smith normal forms of `∂_d` and `∂_{d+1}`, with a
/// cycle representing each generator.
pub fn find_cycles<G: Generator>(
    group: &FiniteSubgroup<G>,
    degree: usize,
    cap: usize,
) -> Result<Homology> {
    if degree == 0 {
        return Err(Error::Invalid(
            "homology is computed in degrees d ≥ 1".into(),
        ));
    }
    let n = group.order();
    check_cap(n, degree, cap)?;
    let rows = n.pow(degree as u32 - 1);
    let cols = n.pow(degree as u32);

    let mut dd = IntMatrix::<i64>::zeros(rows, cols);
    for (j, col) in boundary_columns(group, degree).into_iter().enumerate() {
        for (i, c) in col {
            dd.set(i, j, c);
        }
    }
    let s = smith_normal_form(
        &dd,
        Track {
            q: true,
            q_inv: true,
            ..Track::default()
        },
    );
    let (q, q_inv) = (s.q.expect("tracked"), s.q_inv.expect("tracked"));
    let r = s.rank;
    let kernel_dim = cols - r;

    // ∂_{d+1} in the coordinates of Q⁻¹, restricted to the kernel block.
    // Zero and repeated columns (up to sign) span nothing new.
    let mut seen = std::collections::HashSet::new();
    let mut image: Vec<Vec<(usize, BigInt)>> = Vec::new();
    let kernel_rows: Vec<Vec<(usize, &BigInt)>> = (0..cols)
        .map(|i| {
            (0..kernel_dim)
                .map(|k| (k, q_inv.get(r + k, i)))
                .filter(|(_, e)| !e.is_zero())
                .collect()
        })
        .collect();
    for col in boundary_columns(group, degree + 1) {
        let mut v = vec![BigInt::zero(); kernel_dim];
        for (i, c) in col {
            for &(k, e) in &kernel_rows[i] {
                v[k] += e * c;
            }
        }
        let mut sparse: Vec<(usize, BigInt)> = v
            .into_iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .collect();
        if sparse.first().is_some_and(|(_, c)| c.is_negative()) {
            sparse.iter_mut().for_each(|(_, c)| *c = -&*c);
        }
        if !sparse.is_empty() && seen.insert(sparse.clone()) {
            image.push(sparse);
        }
    }
    let track = Track {
        p_inv: true,
        ..Track::default()
    };
    let fits = image.iter().flatten().all(|(_, c)| c.to_i64().is_some());
    let s2 = if fits {
        let mut m = IntMatrix::<i64>::zeros(kernel_dim, image.len());
        for (j, col) in image.iter().enumerate() {
            for (k, c) in col {
                m.set(*k, j, c.to_i64().expect("checked"));
            }
        }
        smith_normal_form(&m, track)
    } else {
        let mut m = IntMatrix::<BigInt>::zeros(kernel_dim, image.len());
        for (j, col) in image.into_iter().enumerate() {
            for (k, c) in col {
                m.set(k, j, c);
            }
        }
        snf::smith_normal_form_big(&m, track)
    };
    let p_inv = s2.p_inv.as_ref().expect("tracked");

    let kernel_vector = |coeffs: &dyn Fn(usize) -> BigInt| -> Vec<BigInt> {
        (0..cols)
            .map(|row| {
                (0..kernel_dim).fold(BigInt::zero(), |acc, k| acc + q.get(row, r + k) * coeffs(k))
            })
            .collect()
    };

    let mut torsion = Vec::new();
    let mut generators = Vec::new();
    for i in 0..kernel_dim {
        let order = if i < s2.rank {
            Some(s2.diagonal[i].clone())
        } else {
            None
        };
        if order.as_ref().is_some_and(|o| o.is_one()) {
            continue;
        }
        let v = kernel_vector(&|k| p_inv.get(k, i).clone());
        let order = order.map(|o| small(&o)).transpose()?;
        if let Some(o) = order {
            torsion.push(o);
        }
        generators.push(HomologyClass {
            order,
            cycle: chain_from_vector(degree, n, &v)?,
        });
    }
    let cycle_basis = (0..kernel_dim)
        .map(|k| chain_from_vector(degree, n, &q.column(r + k)))
        .collect::<Result<Vec<_>>>()?;
    Ok(Homology {
        degree,
        cycle_rank: kernel_dim,
        free_rank: kernel_dim - s2.rank,
        torsion,
        generators,
        cycle_basis,
    })
}

/// Hand-built cycles: `[g]` in degree 1 and `Σ_j [g | g^j | g]` in degree 3
/// for cyclic groups, `[a|b] - [b|a]` for the first commuting pair in degree 2.
pub fn canonical_cycles<G: Generator>(
    group: &FiniteSubgroup<G>,
    degree: usize,
) -> Vec<(String, BarChain<usize>)> {
    let n = group.order();
    if n < 2 {
        return Vec::new();
    }
    let cyclic = group.label.starts_with("cyclic");
    let g = (0..n)
        .find(|&i| i != group.identity)
        .expect("nontrivial group");
    match degree {
        1 if cyclic => vec![("[g]".into(), BarChain::from_terms(1, [(1, vec![g])]))],
        2 => {
            for a in 0..n {
                for b in a + 1..n {
                    if a != group.identity
                        && b != group.identity
                        && group.table[a][b] == group.table[b][a]
                    {
                        let z = BarChain::from_terms(2, [(1, vec![a, b]), (-1, vec![b, a])]);
                        return vec![("[a|b] - [b|a]".into(), z)];
                    }
                }
            }
            Vec::new()
        }
        3 if cyclic => {
            let z = BarChain::from_terms(3, (0..n).map(|j| (1, vec![g, group.power(g, j), g])));
            vec![("Σ_j [g|g^j|g]".into(), z)]
        }
        _ => Vec::new(),
    }
}

/// `z + ∂y` for a random `(d+1)`-chain `y` with `terms` terms.
pub fn perturb<G: Generator, R: Rng>(
    group: &FiniteSubgroup<G>,
    z: &BarChain<usize>,
    terms: usize,
    rng: &mut R,
) -> BarChain<usize> {
    let n = group.order();
    let d = z.degree();
    let y = BarChain::from_terms(
        d + 1,
        (0..terms).map(|_| {
            let c = if rng.random() {
                rng.random_range(1..=2)
            } else {
                -rng.random_range(1..=2)
            };
            (c, (0..=d).map(|_| rng.random_range(0..n)).collect())
        }),
    );
    let mut out = z.clone();
    out.add_scaled(1, &y.boundary(&TableGroup(&group.table)));
    out
}

/// `Σ c · f(tuple)` over the terms of a cycle.
pub fn evaluate_on_cycle<B, S, F>(group: &B, z: &BarChain<B::Elem>, f: F) -> Result<S>
where
    B: BarGroup,
    S: Scalar,
    F: Fn(&[B::Elem]) -> Result<S> + Sync,
{
    if !z.boundary(group).is_zero() {
        return Err(Error::NotACycle);
    }
    let values = z
        .terms()
        .par_iter()
        .map(|(c, t)| Ok(f(t)?.scale(*c)))
        .collect::<Result<Vec<S>>>()?;
    Ok(values.into_iter().fold(S::zero(), |acc, v| acc + v))
}

/// Like [`evaluate_on_cycle`] but snapping each term to an integer first.
pub fn evaluate_snapped<B, S, F>(
    group: &B,
    z: &BarChain<B::Elem>,
    snap_tol: f64,
    f: F,
) -> Result<(S, i64)>
where
    B: BarGroup,
    S: Scalar,
    F: Fn(&[B::Elem]) -> Result<S> + Sync,
{
    if !z.boundary(group).is_zero() {
        return Err(Error::NotACycle);
    }
    let values = z
        .terms()
        .par_iter()
        .map(|(c, t)| {
            let v = f(t)?;
            Ok((v.scale(*c), v.snap(snap_tol)?.value * c))
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(values
        .into_iter()
        .fold((S::zero(), 0), |(a, b), (v, s)| (a + v, b + s)))
}

/// `Σ_i ([a_i|b_i] - [b_i|a_i])` for commuting holonomies
/// `(a_1, b_1, …, a_g, b_g)`.
pub fn surface_cycle<B: BarGroup>(group: &B, images: &[B::Elem]) -> Result<BarChain<B::Elem>> {
    if images.is_empty() || images.len() % 2 != 0 {
        return Err(Error::Invalid(format!(
            "a genus-g surface needs 2g images, got {}",
            images.len()
        )));
    }
    for a in images {
        for b in images {
            if group.mul(a, b) != group.mul(b, a) {
                return Err(Error::NotCommuting);
            }
        }
    }
    let terms = images.chunks(2).flat_map(|p| {
        [
            (1, vec![p[0].clone(), p[1].clone()]),
            (-1, vec![p[1].clone(), p[0].clone()]),
        ]
    });
    Ok(BarChain::from_terms(2, terms))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::diffeo::{CircleRotation, SphereGenerator};
    use crate::sampling::stream;
    use crate::scalar::Q;

    fn cyclic(m: usize) -> FiniteSubgroup<CircleRotation> {
        FiniteSubgroup::<CircleRotation>::cyclic(m).unwrap()
    }

    #[test]
    fn cyclic_homology() {
        let h1 = find_cycles(&cyclic(2), 1, DEFAULT_CAP).unwrap();
        assert_eq!((h1.free_rank, h1.torsion.clone()), (0, vec![2]));
        let h2 = find_cycles(&cyclic(4), 2, DEFAULT_CAP).unwrap();
        assert!(h2.is_trivial());
        let h3 = find_cycles(&cyclic(3), 3, DEFAULT_CAP).unwrap();
        assert_eq!(h3.torsion, vec![3]);
        for g in &h3.generators {
            assert!(g.cycle.boundary(&cyclic(3)).is_zero());
        }
    }

    #[test]
    fn klein_four_homology() {
        let k = FiniteSubgroup::klein4().unwrap();
        assert_eq!(find_cycles(&k, 1, DEFAULT_CAP).unwrap().torsion, vec![2, 2]);
        assert_eq!(find_cycles(&k, 2, DEFAULT_CAP).unwrap().torsion, vec![2]);
        assert_eq!(
            find_cycles(&k, 3, DEFAULT_CAP).unwrap().torsion,
            vec![2, 2, 2]
        );
    }

    #[test]
    fn trivial_group() {
        let g = cyclic(1);
        for d in 1..=4 {
            assert!(find_cycles(&g, d, DEFAULT_CAP).unwrap().is_trivial());
        }
    }

    #[test]
    fn cap_is_enforced() {
        let g = FiniteSubgroup::<SphereGenerator>::dihedral(7).unwrap();
        assert!(matches!(
            find_cycles(&g, 3, DEFAULT_CAP),
            Err(Error::CapExceeded {
                size: 38416,
                cap: 20736
            })
        ));
        assert!(check_cap(12, 3, DEFAULT_CAP).is_ok());
    }

    #[test]
    fn canonical_cycles_are_cycles() {
        for m in 2..=5 {
            let g = cyclic(m);
            for d in [1, 3] {
                let cycles = canonical_cycles(&g, d);
                assert_eq!(cycles.len(), 1);
                assert!(cycles[0].1.boundary(&g).is_zero());
            }
        }
        let k = FiniteSubgroup::klein4().unwrap();
        assert!(canonical_cycles(&k, 2)[0].1.boundary(&k).is_zero());
    }

    #[test]
    fn perturbation_stays_a_cycle() {
        let g = cyclic(4);
        let z = canonical_cycles(&g, 3).remove(0).1;
        let w = perturb(&g, &z, 5, &mut stream(0, 0));
        assert!(w.boundary(&g).is_zero());
        assert_ne!(w, z);
    }

    #[test]
    fn evaluation_requires_a_cycle() {
        let g = cyclic(3);
        let y = BarChain::from_terms(2, [(1, vec![1, 2])]);
        let r = evaluate_on_cycle(&g, &y, |_| Ok(Q::from_integer(1)));
        assert!(matches!(r, Err(Error::NotACycle)));
    }

    #[test]
    fn surface_cycles() {
        let imgs = [Q::new(1, 3), Q::new(1, 5)];
        let z = surface_cycle(&CircleRotations, &imgs).unwrap();
        assert!(z.boundary(&CircleRotations).is_zero());
        assert!(surface_cycle(&CircleRotations, &imgs[..1]).is_err());
        let zero =
            surface_cycle(&CircleRotations, &[Q::from_integer(0), Q::from_integer(0)]).unwrap();
        assert!(zero.is_zero());
        let d3 = FiniteSubgroup::dihedral(3).unwrap();
        assert!(matches!(
            surface_cycle(&d3, &[1, 3]),
            Err(Error::NotCommuting)
        ));
    }
}
