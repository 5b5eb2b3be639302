//! The cocycles `c_k = ⟨δw_k, Δ_k⟩` and `b_k = ⟨δη_k, Δ_k⟩`, the real lift
//! `b̄_{n-1} = ⟨δη̄_{n-1}, Δ_{n-1}⟩`, and randomized checks of the identities
//! relating them.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use num_traits::Zero;
use rayon::prelude::*;
use serde::Serialize;
use serde_json::{json, Value};

use crate::complexes::{pair, Chain, ChainValued, CochainValued, ScalarValued};
use crate::diffeo::Word;
use crate::error::{Error, Result};
use crate::geometry::Manifold;
use crate::sampling::{draw, SampleRng, Sampler, MAX_ATTEMPTS};
use crate::scalar::{abs_diff, circle_distance, Scalar};
use crate::zigzag::Zigzag;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum CocycleKind {
    /// `c_k`, integer coefficients, degree `n + 1`.
    C,
    /// `b_k`, coefficients in `R/Z`, degree `n`.
    B,
    /// `b̄_{n-1}`, real coefficients, degree `n`.
    BLift,
}

impl FromStr for CocycleKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "c" => Ok(CocycleKind::C),
            "b" => Ok(CocycleKind::B),
            "b_lift" | "b_bar" => Ok(CocycleKind::BLift),
            _ => Err(Error::Parse(format!(
                "unknown cocycle kind {s:?} (expected c, b or b_lift)"
            ))),
        }
    }
}

impl fmt::Display for CocycleKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            CocycleKind::C => "c",
            CocycleKind::B => "b",
            CocycleKind::BLift => "b_lift",
        })
    }
}

impl CocycleKind {
    /// Group degree of the cocycle on an `n`-manifold.
    pub fn degree(self, n: usize) -> usize {
        match self {
            CocycleKind::C => n + 1,
            CocycleKind::B | CocycleKind::BLift => n,
        }
    }
}

/// A snapped cocycle value.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum SnappedValue<S> {
    Integer(i64),
    /// Representative in `[0, 1)`.
    Circle(S),
}

impl<S: Scalar> SnappedValue<S> {
    pub fn to_json(self) -> Value {
        match self {
            SnappedValue::Integer(v) => json!(v),
            SnappedValue::Circle(v) => v.to_json(),
        }
    }
}

/// One cocycle evaluation.
#[derive(Debug, Clone, PartialEq)]
pub struct EvalReport<S> {
    pub kind: CocycleKind,
    pub k: usize,
    pub raw: S,
    /// Absent for the real lift.
    pub snapped: Option<SnappedValue<S>>,
    /// Distance from `raw` to the snapped integer (0 for circle values).
    pub residual: f64,
}

fn check_k(kind: CocycleKind, k: usize, n: usize) -> Result<()> {
    let top = match kind {
        CocycleKind::C => n,
        CocycleKind::B => n - 1,
        CocycleKind::BLift => return Ok(()),
    };
    if k > top {
        return Err(Error::Invalid(format!(
            "{kind}_{k} is not defined for n = {n} (need k ≤ {top})"
        )));
    }
    Ok(())
}

/// `c_k` as a group cochain.
pub fn c<M: Manifold>(z: &dyn Zigzag<M>, k: usize) -> Result<ScalarValued<M>> {
    check_k(CocycleKind::C, k, M::DIM)?;
    pair(&z.w(k).coboundary(), &z.delta(k))
}

/// `b_k` as a group cochain of real lifts.
pub fn b<M: Manifold>(z: &dyn Zigzag<M>, k: usize) -> Result<ScalarValued<M>> {
    check_k(CocycleKind::B, k, M::DIM)?;
    pair(&z.eta(k).coboundary(), &z.delta(k))
}

/// `b̄_{n-1}`.
pub fn b_lift<M: Manifold>(z: &dyn Zigzag<M>) -> Result<ScalarValued<M>> {
    pair(
        &CochainValued::constant(z.eta_bar()).coboundary(),
        &z.delta(M::DIM - 1),
    )
}

pub fn cocycle<M: Manifold>(
    z: &dyn Zigzag<M>,
    kind: CocycleKind,
    k: usize,
) -> Result<ScalarValued<M>> {
    match kind {
        CocycleKind::C => c(z, k),
        CocycleKind::B => b(z, k),
        CocycleKind::BLift => b_lift(z),
    }
}

/// Snaps a raw value according to the coefficients of `kind`.
pub fn snap_value<S: Scalar>(
    kind: CocycleKind,
    k: usize,
    raw: S,
    snap_tol: f64,
) -> Result<EvalReport<S>> {
    let (snapped, residual) = match kind {
        CocycleKind::C => {
            let s = raw.snap(snap_tol)?;
            (Some(SnappedValue::Integer(s.value)), s.residual)
        }
        CocycleKind::B => (Some(SnappedValue::Circle(raw.frac())), 0.0),
        CocycleKind::BLift => (None, 0.0),
    };
    Ok(EvalReport {
        kind,
        k,
        raw,
        snapped,
        residual,
    })
}

pub fn eval<M: Manifold>(
    z: &dyn Zigzag<M>,
    kind: CocycleKind,
    k: usize,
    tuple: &[Word<M::Gen>],
) -> Result<EvalReport<M::Scalar>> {
    let raw = cocycle(z, kind, k)?.eval(tuple)?;
    snap_value(kind, k, raw, z.snap_tol())
}

/// `c_k(g_1, …, g_{n+1})`, snapped to an integer.
pub fn eval_c<M: Manifold>(
    z: &dyn Zigzag<M>,
    k: usize,
    tuple: &[Word<M::Gen>],
) -> Result<EvalReport<M::Scalar>> {
    eval(z, CocycleKind::C, k, tuple)
}

/// `b_k(g_1, …, g_n)`, reduced mod 1.
pub fn eval_b<M: Manifold>(
    z: &dyn Zigzag<M>,
    k: usize,
    tuple: &[Word<M::Gen>],
) -> Result<EvalReport<M::Scalar>> {
    eval(z, CocycleKind::B, k, tuple)
}

/// `b̄_{n-1}(g_1, …, g_n)` as a real number.
pub fn eval_b_lift<M: Manifold>(
    z: &dyn Zigzag<M>,
    tuple: &[Word<M::Gen>],
) -> Result<EvalReport<M::Scalar>> {
    eval(z, CocycleKind::BLift, M::DIM - 1, tuple)
}

// ---------------------------------------------------------------------------
// Verification suites

/// Names accepted by [`run_suite`].
pub const SUITES: [&str; 8] = [
    "leibniz",
    "cocycle_c",
    "cocycle_b",
    "telescoping",
    "lift",
    "stokes",
    "zigzag",
    "bounded",
];

/// One identity checked on one sample.
#[derive(Debug, Clone, PartialEq)]
pub struct Check {
    pub name: String,
    pub residual: f64,
    pub pass: bool,
    /// Set when evaluation failed for a non-geometric reason.
    pub error: Option<String>,
    /// Snapped integer, for the boundedness suite.
    pub value: Option<i64>,
}

impl Check {
    fn residual(name: impl Into<String>, residual: f64, tol: f64) -> Self {
        Check {
            name: name.into(),
            residual,
            pass: residual <= tol,
            error: None,
            value: None,
        }
    }

    fn failed(name: impl Into<String>, e: &Error) -> Self {
        Check {
            name: name.into(),
            residual: f64::INFINITY,
            pass: false,
            error: Some(e.to_string()),
            value: None,
        }
    }
}

#[derive(Debug, Clone, Default, PartialEq, Serialize)]
pub struct CheckSummary {
    pub passed: usize,
    pub failed: usize,
    pub max_residual: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Failure {
    pub index: u64,
    pub check: String,
    pub residual: Option<f64>,
    pub error: Option<String>,
}

/// Aggregated outcome of a suite.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SuiteReport {
    pub suite: String,
    pub manifold: String,
    pub samples: usize,
    pub seed: u64,
    pub passed: usize,
    pub failed: usize,
    /// Degenerate random draws that were replaced.
    pub skipped: usize,
    pub max_residual: f64,
    pub checks: BTreeMap<String, CheckSummary>,
    pub failures: Vec<Failure>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub bounded: Option<BoundedStats>,
}

impl SuiteReport {
    pub fn ok(&self) -> bool {
        self.failed == 0
    }
}

/// Empirical distribution of a snapped cocycle over a sample.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BoundedStats {
    pub k: usize,
    pub sup: i64,
    pub histogram: BTreeMap<i64, usize>,
}

/// Failures listed in a report, beyond which only counts are kept.
const MAX_LISTED_FAILURES: usize = 20;

/// Shared inputs of the randomized suites.
#[derive(Clone)]
pub struct SuiteContext<M: Manifold> {
    pub zigzag: Arc<dyn Zigzag<M>>,
    pub sampler: Arc<dyn Sampler<M>>,
    /// Pre-snap tolerance for real-valued identities (0 for exact arithmetic).
    pub tol: f64,
    pub seed: u64,
    /// Restrict per-`k` suites to one `k`.
    pub k: Option<usize>,
}

impl<M: Manifold> SuiteContext<M> {
    pub fn new(zigzag: Arc<dyn Zigzag<M>>, sampler: Arc<dyn Sampler<M>>, seed: u64) -> Self {
        let tol = if M::Scalar::EXACT { 0.0 } else { 1e-6 };
        SuiteContext {
            zigzag,
            sampler,
            tol,
            seed,
            k: None,
        }
    }

    pub fn with_k(mut self, k: Option<usize>) -> Self {
        self.k = k;
        self
    }

    fn z(&self) -> &dyn Zigzag<M> {
        &*self.zigzag
    }

    fn ks(&self, top: usize, from: usize) -> Vec<usize> {
        match self.k {
            Some(k) => vec![k],
            None => (from..=top).collect(),
        }
    }

    fn tuple(&self, rng: &mut SampleRng, len: usize) -> Vec<Word<M::Gen>> {
        self.sampler.tuple(rng, len)
    }

    /// Runs `per_sample` on `samples` independent draws in parallel, in
    /// sample order.
    fn outcomes<F>(&self, samples: usize, per_sample: F) -> Vec<Outcome>
    where
        F: Fn(&mut SampleRng) -> Result<Vec<Check>> + Send + Sync,
    {
        (0..samples as u64)
            .into_par_iter()
            .map(|index| match draw(self.seed, index, &per_sample) {
                Ok(d) => Outcome {
                    index,
                    skipped: d.skipped,
                    checks: d.value,
                },
                Err(e) => Outcome {
                    index,
                    skipped: MAX_ATTEMPTS,
                    checks: vec![Check::failed("draw", &e)],
                },
            })
            .collect()
    }

    fn run<F>(&self, suite: &str, samples: usize, per_sample: F) -> SuiteReport
    where
        F: Fn(&mut SampleRng) -> Result<Vec<Check>> + Send + Sync,
    {
        self.aggregate(suite, samples, &self.outcomes(samples, per_sample))
    }

    fn aggregate(&self, suite: &str, samples: usize, outcomes: &[Outcome]) -> SuiteReport {
        let mut report = SuiteReport {
            suite: suite.to_string(),
            manifold: M::NAME.to_string(),
            samples,
            seed: self.seed,
            passed: 0,
            failed: 0,
            skipped: 0,
            max_residual: 0.0,
            checks: BTreeMap::new(),
            failures: Vec::new(),
            bounded: None,
        };
        for outcome in outcomes {
            report.skipped += outcome.skipped;
            for check in &outcome.checks {
                let entry = report.checks.entry(check.name.clone()).or_default();
                if check.pass {
                    entry.passed += 1;
                    report.passed += 1;
                    entry.max_residual = entry.max_residual.max(check.residual);
                    report.max_residual = report.max_residual.max(check.residual);
                } else {
                    entry.failed += 1;
                    report.failed += 1;
                    if report.failures.len() < MAX_LISTED_FAILURES {
                        report.failures.push(Failure {
                            index: outcome.index,
                            check: check.name.clone(),
                            residual: check.residual.is_finite().then_some(check.residual),
                            error: check.error.clone(),
                        });
                    }
                }
            }
        }
        report
    }
}

struct Outcome {
    index: u64,
    skipped: usize,
    checks: Vec<Check>,
}

/// Evaluates `f`, turning non-geometric errors into a failed check and
/// propagating geometric ones so the sample is redrawn.
fn guarded(name: &str, f: impl FnOnce() -> Result<Check>) -> Result<Check> {
    match f() {
        Ok(c) => Ok(c),
        Err(e) if e.is_geometric() => Err(e),
        Err(e) => Ok(Check::failed(name, &e)),
    }
}

/// `δc = 0` (kind c, pre- and post-snap) or `δb ≡ 0 mod 1` (kind b) on random
/// `(n + 2)`- resp. `(n + 1)`-tuples.
pub fn verify_cocycle<M: Manifold>(
    ctx: &SuiteContext<M>,
    kind: CocycleKind,
    samples: usize,
) -> SuiteReport {
    let n = M::DIM;
    let (suite, top) = match kind {
        CocycleKind::C => ("cocycle_c", n),
        _ => ("cocycle_b", n - 1),
    };
    let ks = ctx.ks(top, 0);
    ctx.run(suite, samples, |rng| {
        let t = ctx.tuple(rng, kind.degree(n) + 1);
        let mut checks = Vec::new();
        for &k in &ks {
            let name = format!("{kind}_{k}");
            checks.push(guarded(&name, || {
                let f = cocycle(ctx.z(), kind, k)?;
                if kind == CocycleKind::C {
                    let (raw, snapped) = coboundary_terms(&f, &t, ctx.z().snap_tol())?;
                    let residual = raw.to_f64().abs();
                    Ok(Check {
                        pass: residual <= ctx.tol && snapped == 0,
                        ..Check::residual(&name, residual, ctx.tol)
                    })
                } else {
                    let raw = f.coboundary().eval(&t)?;
                    Ok(Check::residual(&name, raw.circle_residual(), ctx.tol))
                }
            })?);
        }
        Ok(checks)
    })
}

/// `(δf)(t)` both from raw values and from the snapped values of `f`.
fn coboundary_terms<M: Manifold>(
    f: &ScalarValued<M>,
    t: &[Word<M::Gen>],
    snap_tol: f64,
) -> Result<(M::Scalar, i64)> {
    let p = t.len() - 1;
    let mut faces = vec![(1, t[1..].to_vec())];
    for i in 1..=p {
        faces.push((
            if i % 2 == 0 { 1 } else { -1 },
            crate::complexes::merge_at(t, i),
        ));
    }
    faces.push((if (p + 1) % 2 == 0 { 1 } else { -1 }, t[..p].to_vec()));
    let mut raw = M::Scalar::zero();
    let mut snapped = 0;
    for (sign, face) in faces {
        let v = f.eval(&face)?;
        raw = raw + v.scale(sign);
        snapped += sign * v.snap(snap_tol)?.value;
    }
    Ok((raw, snapped))
}

/// `c_k = c_{k-1} - δ⟨w_{k-1}, Δ_{k-1}⟩` pointwise.
pub fn verify_telescoping<M: Manifold>(ctx: &SuiteContext<M>, samples: usize) -> SuiteReport {
    let n = M::DIM;
    let ks = ctx.ks(n, 1);
    ctx.run("telescoping", samples, |rng| {
        let t = ctx.tuple(rng, n + 1);
        let mut checks = Vec::new();
        for &k in &ks {
            let name = format!("c_{k}");
            checks.push(guarded(&name, || {
                if k == 0 || k > n {
                    return Err(Error::Invalid(format!("telescoping needs 1 ≤ k ≤ {n}")));
                }
                let z = ctx.z();
                let lhs = c(z, k)?.eval(&t)?;
                let rhs = c(z, k - 1)?.eval(&t)?
                    - pair(&z.w(k - 1), &z.delta(k - 1))?.coboundary().eval(&t)?;
                Ok(Check::residual(&name, abs_diff(lhs, rhs), ctx.tol))
            })?);
        }
        Ok(checks)
    })
}

/// `δb̄_{n-1} = c_n` pointwise.
pub fn verify_lift<M: Manifold>(ctx: &SuiteContext<M>, samples: usize) -> SuiteReport {
    let n = M::DIM;
    ctx.run("lift", samples, |rng| {
        let t = ctx.tuple(rng, n + 1);
        Ok(vec![guarded("db_lift - c_n", || {
            let lhs = b_lift(ctx.z())?.coboundary().eval(&t)?;
            let rhs = c(ctx.z(), n)?.eval(&t)?;
            Ok(Check::residual(
                "db_lift - c_n",
                abs_diff(lhs, rhs),
                ctx.tol,
            ))
        })?])
    })
}

/// Integrality of `w_n = Ω - dη̄_{n-1}` on random mapped `n`-simplices.
pub fn verify_stokes<M: Manifold>(ctx: &SuiteContext<M>, samples: usize) -> SuiteReport {
    let n = M::DIM;
    let snap_tol = ctx.z().snap_tol();
    ctx.run("stokes", samples, |rng| {
        let s = ctx.sampler.simplex(rng, n)?;
        Ok(vec![guarded("w_top", || {
            let boundary = Chain::from_simplex(s.clone()).boundary();
            let raw = ctx.z().volume(&s)? - ctx.z().eta_bar().eval_chain(&boundary)?;
            let residual = raw.nearest().residual;
            Ok(Check::residual("w_top", residual, snap_tol.max(ctx.tol)))
        })?])
    })
}

fn chain_residual<M: Manifold>(c: &Chain<M>) -> f64 {
    c.terms().len() as f64
}

/// The zig-zag equations on random tuples and simplices:
/// `δΔ_k = ∂Δ_{k+1}`, `δw_k + (-1)^{n-k+1} dw_{k-1} = 0`,
/// `δη_k + (-1)^{n-k} dη_{k-1} ≡ 0` and `dη_{n-1} ≡ Ω` mod 1.
pub fn verify_zigzag<M: Manifold>(ctx: &SuiteContext<M>, samples: usize) -> SuiteReport {
    let n = M::DIM;
    ctx.run("zigzag", samples, |rng| {
        let z = ctx.z();
        let mut checks = Vec::new();
        for k in 0..n {
            let t = ctx.tuple(rng, k + 1);
            let name = format!("dDelta_{k} - bdDelta_{}", k + 1);
            checks.push(guarded(&name, || {
                let mut diff = z.delta(k).coboundary().eval(&t)?;
                diff.add_scaled(-1, &z.delta(k + 1).boundary().eval(&t)?)?;
                Ok(Check::residual(&name, chain_residual(&diff), 0.0))
            })?);
        }
        for k in 1..=n {
            let t = ctx.tuple(rng, n - k + 1);
            let s = ctx.sampler.simplex(rng, k)?;
            let name = format!("dw_{k}");
            let sign = if (n - k + 1) % 2 == 0 { 1 } else { -1 };
            checks.push(guarded(&name, || {
                let lhs = z.w(k).coboundary().eval(&t)?.eval(&s)?;
                let rhs = z.w(k - 1).d().eval(&t)?.eval(&s)?;
                Ok(Check::residual(
                    &name,
                    (lhs + rhs.scale(sign)).to_f64().abs(),
                    ctx.tol,
                ))
            })?);
        }
        for k in 1..n {
            let t = ctx.tuple(rng, n - k);
            let s = ctx.sampler.simplex(rng, k)?;
            let name = format!("deta_{k}");
            let sign = if (n - k) % 2 == 0 { 1 } else { -1 };
            checks.push(guarded(&name, || {
                let lhs = z.eta(k).coboundary().eval(&t)?.eval(&s)?;
                let rhs = z.eta(k - 1).d().eval(&t)?.eval(&s)?;
                Ok(Check::residual(
                    &name,
                    (lhs + rhs.scale(sign)).circle_residual(),
                    ctx.tol,
                ))
            })?);
        }
        let s = ctx.sampler.simplex(rng, n)?;
        let name = format!("deta_{} - Omega", n - 1);
        checks.push(guarded(&name, || {
            let lhs = z.eta(n - 1).d().eval(&[])?.eval(&s)?;
            Ok(Check::residual(
                &name,
                circle_distance(lhs, z.volume(&s)?),
                ctx.tol,
            ))
        })?);
        Ok(checks)
    })
}

/// A named group cochain valued in singular cochains.
struct Left<M: Manifold> {
    name: String,
    a: CochainValued<M>,
}

/// A named group cochain valued in singular chains.
struct Right<M: Manifold> {
    name: String,
    b: ChainValued<M>,
}

fn leibniz_catalog<M: Manifold>(z: &dyn Zigzag<M>) -> (Vec<Left<M>>, Vec<Right<M>>) {
    let n = M::DIM;
    let mut left = Vec::new();
    for k in 0..=n {
        left.push(Left {
            name: format!("w_{k}"),
            a: z.w(k),
        });
        left.push(Left {
            name: format!("δw_{k}"),
            a: z.w(k).coboundary(),
        });
    }
    for k in 0..n {
        left.push(Left {
            name: format!("η_{k}"),
            a: z.eta(k),
        });
        left.push(Left {
            name: format!("δη_{k}"),
            a: z.eta(k).coboundary(),
        });
    }
    let mut right = Vec::new();
    for k in 0..=n {
        right.push(Right {
            name: format!("Δ_{k}"),
            b: z.delta(k),
        });
        right.push(Right {
            name: format!("δΔ_{k}"),
            b: z.delta(k).coboundary(),
        });
    }
    (left, right)
}

/// `δ⟨a, b⟩ = ⟨δa, b⟩ + (-1)^p ⟨a, δb⟩` for every catalog pair of matching
/// dimension with `p + q ≤ max_degree`.
pub fn verify_leibniz<M: Manifold>(
    ctx: &SuiteContext<M>,
    samples: usize,
    max_degree: usize,
) -> SuiteReport {
    let (left, right) = leibniz_catalog(ctx.z());
    ctx.run("leibniz", samples, |rng| {
        let mut checks = Vec::new();
        for a in &left {
            for b in &right {
                let (p, q) = (a.a.degree(), b.b.degree());
                if a.a.dim() != b.b.dim() || p + q > max_degree {
                    continue;
                }
                let t = ctx.tuple(rng, p + q + 1);
                let name = format!("<{}, {}>", a.name, b.name);
                checks.push(guarded(&name, || {
                    let lhs = pair(&a.a, &b.b)?.coboundary().eval(&t)?;
                    let first = pair(&a.a.coboundary(), &b.b)?.eval(&t)?;
                    let second = pair(&a.a, &b.b.coboundary())?.eval(&t)?;
                    let sign = if p % 2 == 0 { 1 } else { -1 };
                    Ok(Check::residual(
                        &name,
                        abs_diff(lhs, first + second.scale(sign)),
                        ctx.tol,
                    ))
                })?);
            }
        }
        Ok(checks)
    })
}

/// Empirical sup and histogram of the snapped values of `c_k`.
pub fn boundedness_sample<M: Manifold>(ctx: &SuiteContext<M>, samples: usize) -> SuiteReport {
    let n = M::DIM;
    let k = ctx.k.unwrap_or(n);
    let outcomes = ctx.outcomes(samples, |rng| {
        let t = ctx.tuple(rng, n + 1);
        let name = format!("c_{k}");
        Ok(vec![guarded(&name, || {
            let r = eval_c(ctx.z(), k, &t)?;
            let value = match r.snapped {
                Some(SnappedValue::Integer(v)) => v,
                _ => unreachable!("c_k snaps to an integer"),
            };
            Ok(Check {
                value: Some(value),
                ..Check::residual(&name, r.residual, ctx.z().snap_tol())
            })
        })?])
    });
    let mut report = ctx.aggregate("bounded", samples, &outcomes);
    let mut histogram = BTreeMap::new();
    for v in outcomes
        .iter()
        .flat_map(|o| o.checks.iter().filter_map(|c| c.value))
    {
        *histogram.entry(v).or_insert(0) += 1;
    }
    let sup = histogram.keys().map(|v: &i64| v.abs()).max().unwrap_or(0);
    report.bounded = Some(BoundedStats { k, sup, histogram });
    report
}

/// Runs the suite called `name` (see [`SUITES`]).
pub fn run_suite<M: Manifold>(
    ctx: &SuiteContext<M>,
    name: &str,
    samples: usize,
) -> Result<SuiteReport> {
    Ok(match name {
        "leibniz" => verify_leibniz(ctx, samples, 3),
        "cocycle_c" => verify_cocycle(ctx, CocycleKind::C, samples),
        "cocycle_b" => verify_cocycle(ctx, CocycleKind::B, samples),
        "telescoping" => verify_telescoping(ctx, samples),
        "lift" => verify_lift(ctx, samples),
        "stokes" => verify_stokes(ctx, samples),
        "zigzag" => verify_zigzag(ctx, samples),
        "bounded" => boundedness_sample(ctx, samples),
        _ => {
            return Err(Error::Parse(format!(
                "unknown suite {name:?} (expected one of {})",
                SUITES.join(", ")
            )))
        }
    })
}
