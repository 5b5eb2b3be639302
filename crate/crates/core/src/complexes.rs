//! Group cochains with values in singular chains (a left `G`-module, `g·σ`)
//! and in singular cochains (a right `G`-module, `(a·g)(σ) = a(g·σ)`), their
//! coboundaries, the simplicial boundary, and the pairing into trivial
//! coefficients.
//!
//! The pairing of `a ∈ C^p(G; C^r)` with `b ∈ C^q(G; C_r)` is
//!
//! ```text
//! ⟨a, b⟩(g_1, …, g_{p+q}) = ⟨ a(g_1, …, g_p), b(g_{p+1}, …, g_{p+q}) ⟩
//! ```
//!
//! which satisfies `δ⟨a,b⟩ = ⟨δa, b⟩ + (-1)^p ⟨a, δb⟩`.

use std::fmt;
use std::sync::Arc;

use crate::diffeo::{Word, WordSpec};
use crate::error::{Error, Result};
use crate::geometry::{Manifold, MappedSimplex};
use crate::scalar::Scalar;
use num_traits::Zero;

pub type Tuple<M> = [Word<<M as Manifold>::Gen>];

/// A finite integer combination of singular simplices of one dimension.
#[derive(Debug, Clone, PartialEq)]
pub struct Chain<M: Manifold> {
    dim: usize,
    terms: Vec<(i64, MappedSimplex<M>)>,
}

impl<M: Manifold> Chain<M> {
    pub fn zero(dim: usize) -> Self {
        Chain {
            dim,
            terms: Vec::new(),
        }
    }

    pub fn from_simplex(s: MappedSimplex<M>) -> Self {
        Chain {
            dim: s.dim(),
            terms: vec![(1, s)],
        }
    }

    /// Collects terms, merging structurally equal simplices.
    pub fn from_terms(
        dim: usize,
        terms: impl IntoIterator<Item = (i64, MappedSimplex<M>)>,
    ) -> Result<Self> {
        let mut c = Chain::zero(dim);
        for (coeff, s) in terms {
            if s.dim() != dim {
                return Err(Error::DimensionMismatch {
                    expected: dim,
                    found: s.dim(),
                });
            }
            c.push(coeff, s);
        }
        Ok(c)
    }

    fn push(&mut self, coeff: i64, s: MappedSimplex<M>) {
        if coeff == 0 {
            return;
        }
        if let Some(pos) = self.terms.iter().position(|(_, t)| *t == s) {
            self.terms[pos].0 += coeff;
            if self.terms[pos].0 == 0 {
                self.terms.remove(pos);
            }
        } else {
            self.terms.push((coeff, s));
        }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn terms(&self) -> &[(i64, MappedSimplex<M>)] {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add_scaled(&mut self, coeff: i64, other: &Chain<M>) -> Result<()> {
        if other.dim != self.dim {
            return Err(Error::DimensionMismatch {
                expected: self.dim,
                found: other.dim,
            });
        }
        for (c, s) in &other.terms {
            self.push(coeff * c, s.clone());
        }
        Ok(())
    }

    /// `g · c`.
    pub fn push_forward(&self, g: &Word<M::Gen>) -> Self {
        let mut out = Chain::zero(self.dim);
        for (c, s) in &self.terms {
            out.push(*c, s.push_forward(g));
        }
        out
    }

    /// `∂c`. The boundary of a 0-chain is the zero 0-chain.
    pub fn boundary(&self) -> Self {
        let mut out = Chain::zero(self.dim.saturating_sub(1));
        for (c, s) in &self.terms {
            for (sign, face) in s.faces() {
                out.push(c * sign, face);
            }
        }
        out
    }
}

/// Coefficient group of a singular cochain.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Coefficients {
    Integers,
    Reals,
    /// `R/Z`, represented by real lifts.
    Circle,
}

type SimplexFn<M> = dyn Fn(&MappedSimplex<M>) -> Result<<M as Manifold>::Scalar> + Send + Sync;

/// A singular cochain given by an evaluation procedure, extended linearly to
/// chains.
#[derive(Clone)]
pub struct Cochain<M: Manifold> {
    dim: usize,
    coefficients: Coefficients,
    eval: Arc<SimplexFn<M>>,
}

impl<M: Manifold> fmt::Debug for Cochain<M> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Cochain")
            .field("dim", &self.dim)
            .field("coefficients", &self.coefficients)
            .finish()
    }
}

impl<M: Manifold> Cochain<M> {
    pub fn new<F>(dim: usize, coefficients: Coefficients, eval: F) -> Self
    where
        F: Fn(&MappedSimplex<M>) -> Result<M::Scalar> + Send + Sync + 'static,
    {
        Cochain {
            dim,
            coefficients,
            eval: Arc::new(eval),
        }
    }

    pub fn zero(dim: usize, coefficients: Coefficients) -> Self {
        Cochain::new(dim, coefficients, |_| Ok(M::Scalar::zero()))
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn coefficients(&self) -> Coefficients {
        self.coefficients
    }

    pub fn eval(&self, s: &MappedSimplex<M>) -> Result<M::Scalar> {
        if s.dim() != self.dim {
            return Err(Error::DimensionMismatch {
                expected: self.dim,
                found: s.dim(),
            });
        }
        (self.eval)(s)
    }

    pub fn eval_chain(&self, c: &Chain<M>) -> Result<M::Scalar> {
        if c.dim() != self.dim && !c.is_zero() {
            return Err(Error::DimensionMismatch {
                expected: self.dim,
                found: c.dim(),
            });
        }
        c.terms().iter().try_fold(M::Scalar::zero(), |acc, (k, s)| {
            Ok(acc + self.eval(s)?.scale(*k))
        })
    }

    /// The right action `a·g`, i.e. the pullback `g^* a`.
    pub fn pullback(&self, g: &Word<M::Gen>) -> Self {
        let inner = self.clone();
        let g = g.clone();
        Cochain::new(self.dim, self.coefficients, move |s| {
            inner.eval(&s.push_forward(&g))
        })
    }

    /// `da`, with `(da)(σ) = a(∂σ)`.
    pub fn d(&self) -> Self {
        let inner = self.clone();
        Cochain::new(self.dim + 1, self.coefficients, move |s| {
            inner.eval_chain(&Chain::from_simplex(s.clone()).boundary())
        })
    }

    /// `Σ c_i · a_i`, all of one dimension.
    pub fn combination(
        dim: usize,
        coefficients: Coefficients,
        parts: Vec<(i64, Cochain<M>)>,
    ) -> Result<Self> {
        if let Some((_, bad)) = parts.iter().find(|(_, a)| a.dim != dim) {
            return Err(Error::DimensionMismatch {
                expected: dim,
                found: bad.dim,
            });
        }
        Ok(Cochain::new(dim, coefficients, move |s| {
            parts.iter().try_fold(M::Scalar::zero(), |acc, (c, a)| {
                Ok(acc + a.eval(s)?.scale(*c))
            })
        }))
    }
}

fn check_arity(expected: usize, found: usize) -> Result<()> {
    if expected != found {
        return Err(Error::ArityMismatch { expected, found });
    }
    Ok(())
}

/// `(g_1, …, g_i g_{i+1}, …)` with the `i`-th and `(i+1)`-th entries merged
/// (1-based `i`).
pub fn merge_at<G: crate::diffeo::Generator>(tuple: &[Word<G>], i: usize) -> Vec<Word<G>> {
    let mut out = Vec::with_capacity(tuple.len() - 1);
    out.extend_from_slice(&tuple[..i - 1]);
    out.push(tuple[i - 1].compose(&tuple[i]));
    out.extend_from_slice(&tuple[i + 1..]);
    out
}

fn sign(i: usize) -> i64 {
    if i.is_multiple_of(2) {
        1
    } else {
        -1
    }
}

type ChainFn<M> = dyn Fn(&Tuple<M>) -> Result<Chain<M>> + Send + Sync;
type CochainFn<M> = dyn Fn(&Tuple<M>) -> Result<Cochain<M>> + Send + Sync;
type ScalarFn<M> = dyn Fn(&Tuple<M>) -> Result<<M as Manifold>::Scalar> + Send + Sync;

/// An element of `C^p_grp(G; C_r(M; Z))`.
#[derive(Clone)]
pub struct ChainValued<M: Manifold> {
    degree: usize,
    dim: usize,
    eval: Arc<ChainFn<M>>,
}

impl<M: Manifold> ChainValued<M> {
    pub fn new<F>(degree: usize, dim: usize, eval: F) -> Self
    where
        F: Fn(&Tuple<M>) -> Result<Chain<M>> + Send + Sync + 'static,
    {
        ChainValued {
            degree,
            dim,
            eval: Arc::new(eval),
        }
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn eval(&self, tuple: &Tuple<M>) -> Result<Chain<M>> {
        check_arity(self.degree, tuple.len())?;
        (self.eval)(tuple)
    }

    /// Left-module coboundary:
    /// `δc(g_1..g_{p+1}) = g_1·c(g_2..) + Σ (-1)^i c(..g_i g_{i+1}..) + (-1)^{p+1} c(g_1..g_p)`.
    pub fn coboundary(&self) -> Self {
        let inner = self.clone();
        let p = self.degree;
        let dim = self.dim;
        ChainValued::new(p + 1, dim, move |t| {
            let mut out = inner.eval(&t[1..])?.push_forward(&t[0]);
            for i in 1..=p {
                out.add_scaled(sign(i), &inner.eval(&merge_at(t, i))?)?;
            }
            out.add_scaled(sign(p + 1), &inner.eval(&t[..p])?)?;
            Ok(out)
        })
    }

    /// Pointwise simplicial boundary `∂c`.
    pub fn boundary(&self) -> Self {
        let inner = self.clone();
        ChainValued::new(self.degree, self.dim.saturating_sub(1), move |t| {
            Ok(inner.eval(t)?.boundary())
        })
    }
}

/// An element of `C^p_grp(G; C^r(M; A))`.
#[derive(Clone)]
pub struct CochainValued<M: Manifold> {
    degree: usize,
    dim: usize,
    coefficients: Coefficients,
    eval: Arc<CochainFn<M>>,
}

impl<M: Manifold> CochainValued<M> {
    pub fn new<F>(degree: usize, dim: usize, coefficients: Coefficients, eval: F) -> Self
    where
        F: Fn(&Tuple<M>) -> Result<Cochain<M>> + Send + Sync + 'static,
    {
        CochainValued {
            degree,
            dim,
            coefficients,
            eval: Arc::new(eval),
        }
    }

    /// A group 0-cochain, i.e. a single singular cochain.
    pub fn constant(a: Cochain<M>) -> Self {
        CochainValued::new(0, a.dim(), a.coefficients(), move |_| Ok(a.clone()))
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn coefficients(&self) -> Coefficients {
        self.coefficients
    }

    pub fn eval(&self, tuple: &Tuple<M>) -> Result<Cochain<M>> {
        check_arity(self.degree, tuple.len())?;
        (self.eval)(tuple)
    }

    /// Right-module coboundary:
    /// `δc(g_1..g_{p+1}) = c(g_2..) + Σ (-1)^i c(..g_i g_{i+1}..) + (-1)^{p+1} c(g_1..g_p)·g_{p+1}`.
    pub fn coboundary(&self) -> Self {
        let inner = self.clone();
        let p = self.degree;
        let (dim, coefficients) = (self.dim, self.coefficients);
        CochainValued::new(p + 1, dim, coefficients, move |t| {
            let mut parts = vec![(1, inner.eval(&t[1..])?)];
            for i in 1..=p {
                parts.push((sign(i), inner.eval(&merge_at(t, i))?));
            }
            parts.push((sign(p + 1), inner.eval(&t[..p])?.pullback(&t[p])));
            Cochain::combination(dim, coefficients, parts)
        })
    }

    /// Pointwise singular coboundary `dc`.
    pub fn d(&self) -> Self {
        let inner = self.clone();
        CochainValued::new(self.degree, self.dim + 1, self.coefficients, move |t| {
            Ok(inner.eval(t)?.d())
        })
    }

    /// `Σ c_i · a_i` of cochains of equal degree and dimension.
    pub fn combination(parts: Vec<(i64, CochainValued<M>)>) -> Result<Self> {
        let first = parts
            .first()
            .ok_or_else(|| Error::Invalid("empty combination".into()))?;
        let (degree, dim, coefficients) = (first.1.degree, first.1.dim, first.1.coefficients);
        for (_, a) in &parts {
            if a.degree != degree {
                return Err(Error::ArityMismatch {
                    expected: degree,
                    found: a.degree,
                });
            }
            if a.dim != dim {
                return Err(Error::DimensionMismatch {
                    expected: dim,
                    found: a.dim,
                });
            }
        }
        Ok(CochainValued::new(degree, dim, coefficients, move |t| {
            let evaluated = parts
                .iter()
                .map(|(c, a)| Ok((*c, a.eval(t)?)))
                .collect::<Result<Vec<_>>>()?;
            Cochain::combination(dim, coefficients, evaluated)
        }))
    }
}

/// An element of `C^p_grp(G; A)` with trivial coefficients.
#[derive(Clone)]
pub struct ScalarValued<M: Manifold> {
    degree: usize,
    eval: Arc<ScalarFn<M>>,
}

impl<M: Manifold> ScalarValued<M> {
    pub fn new<F>(degree: usize, eval: F) -> Self
    where
        F: Fn(&Tuple<M>) -> Result<M::Scalar> + Send + Sync + 'static,
    {
        ScalarValued {
            degree,
            eval: Arc::new(eval),
        }
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn eval(&self, tuple: &Tuple<M>) -> Result<M::Scalar> {
        check_arity(self.degree, tuple.len())?;
        (self.eval)(tuple)
    }

    /// Coboundary with trivial coefficients.
    pub fn coboundary(&self) -> Self {
        let inner = self.clone();
        let p = self.degree;
        ScalarValued::new(p + 1, move |t| {
            let mut acc = inner.eval(&t[1..])?;
            for i in 1..=p {
                acc = acc + inner.eval(&merge_at(t, i))?.scale(sign(i));
            }
            Ok(acc + inner.eval(&t[..p])?.scale(sign(p + 1)))
        })
    }

    pub fn scale(&self, c: i64) -> Self {
        let inner = self.clone();
        ScalarValued::new(self.degree, move |t| Ok(inner.eval(t)?.scale(c)))
    }

    pub fn sub(&self, other: &ScalarValued<M>) -> Result<Self> {
        if self.degree != other.degree {
            return Err(Error::ArityMismatch {
                expected: self.degree,
                found: other.degree,
            });
        }
        let (a, b) = (self.clone(), other.clone());
        Ok(ScalarValued::new(self.degree, move |t| {
            Ok(a.eval(t)? - b.eval(t)?)
        }))
    }
}

/// `⟨a, b⟩ ∈ C^{p+q}_grp(G; A)`.
pub fn pair<M: Manifold>(a: &CochainValued<M>, b: &ChainValued<M>) -> Result<ScalarValued<M>> {
    if a.dim() != b.dim() {
        return Err(Error::DimensionMismatch {
            expected: a.dim(),
            found: b.dim(),
        });
    }
    let (a, b) = (a.clone(), b.clone());
    let p = a.degree();
    Ok(ScalarValued::new(p + b.degree(), move |t| {
        a.eval(&t[..p])?.eval_chain(&b.eval(&t[p..])?)
    }))
}

/// JSON form of a word tuple, used in reports.
pub fn tuple_spec<M>(tuple: &Tuple<M>) -> Vec<WordSpec>
where
    M: Manifold,
    M::Gen: crate::diffeo::GeneratorJson,
{
    tuple.iter().map(|w| w.to_spec()).collect()
}
