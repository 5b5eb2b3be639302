//! The inhomogeneous bar complex with trivial integer coefficients.

use std::fmt::Debug;

use crate::scalar::{frac_lift, Q};

/// A group whose elements can be multiplied exactly.
pub trait BarGroup: Sync {
    type Elem: Clone + Debug + PartialEq + Send + Sync;

    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
}

/// Rotations of the circle, as exact rationals mod 1.
#[derive(Debug, Clone, Copy, Default)]
pub struct CircleRotations;

impl BarGroup for CircleRotations {
    type Elem = Q;

    fn mul(&self, a: &Q, b: &Q) -> Q {
        frac_lift(a + b)
    }
}

/// A finite integer combination `Σ c [g_1 | … | g_d]`.
#[derive(Debug, Clone, PartialEq)]
pub struct BarChain<E> {
    degree: usize,
    terms: Vec<(i64, Vec<E>)>,
}

impl<E: Clone + PartialEq> BarChain<E> {
    pub fn zero(degree: usize) -> Self {
        BarChain {
            degree,
            terms: Vec::new(),
        }
    }

    /// Collects terms, merging equal tuples and dropping zero coefficients.
    pub fn from_terms(degree: usize, terms: impl IntoIterator<Item = (i64, Vec<E>)>) -> Self {
        let mut c = BarChain::zero(degree);
        for (coeff, t) in terms {
            c.push(coeff, t);
        }
        c
    }

    fn push(&mut self, coeff: i64, t: Vec<E>) {
        assert_eq!(t.len(), self.degree, "tuple length must equal the degree");
        if coeff == 0 {
            return;
        }
        if let Some(pos) = self.terms.iter().position(|(_, s)| *s == t) {
            self.terms[pos].0 += coeff;
            if self.terms[pos].0 == 0 {
                self.terms.remove(pos);
            }
        } else {
            self.terms.push((coeff, t));
        }
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn terms(&self) -> &[(i64, Vec<E>)] {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add_scaled(&mut self, coeff: i64, other: &BarChain<E>) {
        assert_eq!(self.degree, other.degree);
        for (c, t) in &other.terms {
            self.push(coeff * c, t.clone());
        }
    }

    /// `∂[g_1|…|g_d] = [g_2|…] + Σ (-1)^i […|g_i g_{i+1}|…] + (-1)^d [g_1|…|g_{d-1}]`.
    pub fn boundary<G: BarGroup<Elem = E>>(&self, group: &G) -> BarChain<E> {
        let d = self.degree;
        if d == 0 {
            return BarChain::zero(0);
        }
        let mut out = BarChain::zero(d - 1);
        for (c, t) in &self.terms {
            out.push(*c, t[1..].to_vec());
            for i in 1..d {
                let mut face = Vec::with_capacity(d - 1);
                face.extend_from_slice(&t[..i - 1]);
                face.push(group.mul(&t[i - 1], &t[i]));
                face.extend_from_slice(&t[i + 1..]);
                out.push(if i % 2 == 0 { *c } else { -*c }, face);
            }
            out.push(
                if d.is_multiple_of(2) { *c } else { -*c },
                t[..d - 1].to_vec(),
            );
        }
        out
    }

    pub fn map<F, T: Clone + PartialEq>(&self, f: F) -> BarChain<T>
    where
        F: Fn(&E) -> T,
    {
        BarChain::from_terms(
            self.degree,
            self.terms
                .iter()
                .map(|(c, t)| (*c, t.iter().map(&f).collect())),
        )
    }
}
