//! Gauss–Legendre rules with deterministic bisection refinement.
//!
//! A panel is accepted once the rule on the panel and the sum of the rule on
//! its halves (quarters in 2D) agree to within the panel's share of the
//! tolerance. The refinement pattern depends only on the integrand and the
//! configuration, so results are bit-reproducible.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct QuadConfig {
    /// Number of Gauss–Legendre nodes per panel (per axis in 2D).
    pub order: usize,
    /// Maximum bisection depth.
    pub max_depth: u32,
    /// Absolute tolerance for the whole integral.
    pub tol: f64,
}

impl Default for QuadConfig {
    fn default() -> Self {
        QuadConfig {
            order: 10,
            max_depth: 24,
            tol: 1e-11,
        }
    }
}

/// Gauss–Legendre nodes and weights on `[0, 1]`.
#[derive(Debug, Clone, PartialEq)]
pub struct GaussRule {
    nodes: Vec<f64>,
    weights: Vec<f64>,
}

impl GaussRule {
    pub fn new(order: usize) -> Self {
        assert!(order >= 1, "Gauss rule needs at least one node");
        let n = order;
        let mut nodes = vec![0.0; n];
        let mut weights = vec![0.0; n];
        for i in 0..n.div_ceil(2) {
            // Chebyshev initial guess, then Newton on P_n.
            let mut x = (std::f64::consts::PI * (i as f64 + 0.75) / (n as f64 + 0.5)).cos();
            let mut dp = 1.0;
            for _ in 0..100 {
                let (p, d) = legendre(n, x);
                dp = d;
                let dx = p / d;
                x -= dx;
                if dx.abs() < 1e-16 {
                    break;
                }
            }
            let (_, d) = legendre(n, x);
            if d != 0.0 {
                dp = d;
            }
            let w = 2.0 / ((1.0 - x * x) * dp * dp);
            nodes[i] = 0.5 * (1.0 - x);
            nodes[n - 1 - i] = 0.5 * (1.0 + x);
            weights[i] = 0.5 * w;
            weights[n - 1 - i] = 0.5 * w;
        }
        GaussRule { nodes, weights }
    }

    pub fn order(&self) -> usize {
        self.nodes.len()
    }

    pub fn nodes(&self) -> &[f64] {
        &self.nodes
    }

    pub fn weights(&self) -> &[f64] {
        &self.weights
    }

    pub fn panel<F>(&self, a: f64, b: f64, f: &mut F) -> Result<f64>
    where
        F: FnMut(f64) -> Result<f64>,
    {
        let h = b - a;
        let mut sum = 0.0;
        for (x, w) in self.nodes.iter().zip(&self.weights) {
            sum += w * f(a + h * x)?;
        }
        Ok(sum * h)
    }

    pub fn panel_2d<F>(&self, (s0, s1): (f64, f64), (t0, t1): (f64, f64), f: &mut F) -> Result<f64>
    where
        F: FnMut(f64, f64) -> Result<f64>,
    {
        let (hs, ht) = (s1 - s0, t1 - t0);
        let mut sum = 0.0;
        for (xs, ws) in self.nodes.iter().zip(&self.weights) {
            let s = s0 + hs * xs;
            for (xt, wt) in self.nodes.iter().zip(&self.weights) {
                sum += ws * wt * f(s, t0 + ht * xt)?;
            }
        }
        Ok(sum * hs * ht)
    }
}

fn legendre(n: usize, x: f64) -> (f64, f64) {
    let (mut p0, mut p1) = (1.0, x);
    if n == 0 {
        return (1.0, 0.0);
    }
    for k in 2..=n {
        let k = k as f64;
        let p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = p2;
    }
    let dp = n as f64 * (x * p1 - p0) / (x * x - 1.0);
    (p1, dp)
}

fn accepted(whole: f64, refined: f64, tol: f64) -> bool {
    let diff = (refined - whole).abs();
    diff <= tol || diff <= 64.0 * f64::EPSILON * refined.abs()
}

/// Integral of `f` over `[a, b]`.
pub fn integrate_1d<F>(rule: &GaussRule, cfg: &QuadConfig, a: f64, b: f64, mut f: F) -> Result<f64>
where
    F: FnMut(f64) -> Result<f64>,
{
    let whole = rule.panel(a, b, &mut f)?;
    refine_1d(rule, cfg, a, b, whole, cfg.tol, 0, &mut f)
}

#[allow(clippy::too_many_arguments)]
fn refine_1d<F>(
    rule: &GaussRule,
    cfg: &QuadConfig,
    a: f64,
    b: f64,
    whole: f64,
    tol: f64,
    depth: u32,
    f: &mut F,
) -> Result<f64>
where
    F: FnMut(f64) -> Result<f64>,
{
    let m = 0.5 * (a + b);
    let left = rule.panel(a, m, f)?;
    let right = rule.panel(m, b, f)?;
    let refined = left + right;
    if accepted(whole, refined, tol) {
        return Ok(refined);
    }
    if depth >= cfg.max_depth {
        return Err(Error::QuadratureNonConvergence {
            residual: (refined - whole).abs(),
            tol,
        });
    }
    Ok(refine_1d(rule, cfg, a, m, left, 0.5 * tol, depth + 1, f)?
        + refine_1d(rule, cfg, m, b, right, 0.5 * tol, depth + 1, f)?)
}

/// Integral of `f` over the rectangle `[s0, s1] × [t0, t1]`.
pub fn integrate_2d<F>(
    rule: &GaussRule,
    cfg: &QuadConfig,
    s: (f64, f64),
    t: (f64, f64),
    mut f: F,
) -> Result<f64>
where
    F: FnMut(f64, f64) -> Result<f64>,
{
    let whole = rule.panel_2d(s, t, &mut f)?;
    refine_2d(rule, cfg, s, t, whole, cfg.tol, 0, &mut f)
}

#[allow(clippy::too_many_arguments)]
fn refine_2d<F>(
    rule: &GaussRule,
    cfg: &QuadConfig,
    s: (f64, f64),
    t: (f64, f64),
    whole: f64,
    tol: f64,
    depth: u32,
    f: &mut F,
) -> Result<f64>
where
    F: FnMut(f64, f64) -> Result<f64>,
{
    let sm = 0.5 * (s.0 + s.1);
    let tm = 0.5 * (t.0 + t.1);
    let quads = [
        ((s.0, sm), (t.0, tm)),
        ((sm, s.1), (t.0, tm)),
        ((s.0, sm), (tm, t.1)),
        ((sm, s.1), (tm, t.1)),
    ];
    let mut parts = [0.0; 4];
    for (part, (qs, qt)) in parts.iter_mut().zip(quads) {
        *part = rule.panel_2d(qs, qt, f)?;
    }
    let refined: f64 = parts.iter().sum();
    if accepted(whole, refined, tol) {
        return Ok(refined);
    }
    if depth >= cfg.max_depth {
        return Err(Error::QuadratureNonConvergence {
            residual: (refined - whole).abs(),
            tol,
        });
    }
    let mut total = 0.0;
    for (part, (qs, qt)) in parts.into_iter().zip(quads) {
        total += refine_2d(rule, cfg, qs, qt, part, 0.25 * tol, depth + 1, f)?;
    }
    Ok(total)
}
