//! The `eval`, `verify` and `euler` commands.
//!
//! Each command returns its standard output and exit code instead of
//! printing, so the binary stays a thin shell and the commands are testable.

use std::collections::{BTreeMap, BTreeSet};
use std::path::{Path, PathBuf};
use std::sync::Arc;

use num_traits::Zero;
use rayon::prelude::*;
use serde::Serialize;
use serde_json::{json, Value};

use crate::cocycles::{self, run_suite, snap_value, CocycleKind, SuiteContext};
use crate::config::{error_json, read, Config, EvalRequest, ManifoldKind, WordTable};
use crate::diffeo::{CircleRotation, GeneratorJson, SphereGenerator};
use crate::error::{Error, Result};
use crate::geometry::{Circle, Manifold, Sphere};
use crate::grouphomology::{
    canonical_cycles, find_cycles, perturb, BarChain, FiniteSubgroup, HomologySummary,
};
use crate::report::{eval_record, line, Provenance};
use crate::sampling::{stream, Sampler};
use crate::scalar::{circle_distance, Scalar};
use crate::zigzag::Zigzag;

pub const EXIT_OK: i32 = 0;
pub const EXIT_PARSE: i32 = 2;
pub const EXIT_GEOMETRY: i32 = 3;
pub const EXIT_IDENTITY: i32 = 4;
pub const EXIT_CAP: i32 = 5;

/// Random boundaries added to each cycle by `euler`.
pub const PERTURBATIONS: usize = 20;
/// Terms of the random `(d+1)`-chain in one perturbation.
const PERTURBATION_TERMS: usize = 3;
/// Default sample count for `verify`.
pub const DEFAULT_SAMPLES: usize = 100;

pub fn exit_code(e: &Error) -> i32 {
    match e {
        e if e.is_geometric() => EXIT_GEOMETRY,
        Error::SnapFailure { .. } | Error::NotACycle => EXIT_IDENTITY,
        Error::CapExceeded { .. } => EXIT_CAP,
        _ => EXIT_PARSE,
    }
}

/// What a command prints and how it exits.
#[derive(Debug, Clone, PartialEq)]
pub struct Outcome {
    pub stdout: String,
    /// Non-fatal diagnostics for standard error.
    pub warnings: Vec<String>,
    pub code: i32,
}

impl Outcome {
    fn error(e: &Error) -> Self {
        Outcome {
            stdout: line(&json!({ "error": error_json(e) })),
            warnings: Vec::new(),
            code: exit_code(e),
        }
    }

    fn from_result(r: Result<Outcome>) -> Self {
        r.unwrap_or_else(|e| Outcome::error(&e))
    }
}

/// Manifold-specific construction from a config.
pub trait Setup: Manifold<Gen: GeneratorJson> {
    fn zigzag(cfg: &Config) -> Result<Arc<dyn Zigzag<Self>>>;
    fn sampler(cfg: &Config) -> Result<Arc<dyn Sampler<Self>>>;
    fn subgroup(spec: &str) -> Result<FiniteSubgroup<Self::Gen>>;
}

impl Setup for Circle {
    fn zigzag(cfg: &Config) -> Result<Arc<dyn Zigzag<Circle>>> {
        Ok(Arc::new(cfg.circle_zigzag()?))
    }

    fn sampler(cfg: &Config) -> Result<Arc<dyn Sampler<Circle>>> {
        Ok(Arc::new(cfg.circle_sampler()))
    }

    fn subgroup(spec: &str) -> Result<FiniteSubgroup<CircleRotation>> {
        FiniteSubgroup::<CircleRotation>::parse(spec)
    }
}

impl Setup for Sphere {
    fn zigzag(cfg: &Config) -> Result<Arc<dyn Zigzag<Sphere>>> {
        Ok(Arc::new(cfg.sphere_zigzag()?))
    }

    fn sampler(cfg: &Config) -> Result<Arc<dyn Sampler<Sphere>>> {
        Ok(Arc::new(cfg.sphere_sampler()?))
    }

    fn subgroup(spec: &str) -> Result<FiniteSubgroup<SphereGenerator>> {
        FiniteSubgroup::<SphereGenerator>::parse(spec)
    }
}

fn with_jobs<T: Send>(jobs: Option<usize>, f: impl FnOnce() -> T + Send) -> Result<T> {
    match jobs {
        None => Ok(f()),
        Some(0) => Err(Error::Parse("--jobs must be positive".into())),
        Some(n) => {
            let pool = rayon::ThreadPoolBuilder::new()
                .num_threads(n)
                .build()
                .map_err(|e| Error::Invalid(format!("thread pool: {e}")))?;
            Ok(pool.install(f))
        }
    }
}

/// Loads the config, then runs `circle` or `sphere` in a pool of `jobs` threads.
fn dispatch<C, S>(config: &Path, jobs: Option<usize>, circle: C, sphere: S) -> Outcome
where
    C: FnOnce(&Config) -> Result<Outcome> + Send,
    S: FnOnce(&Config) -> Result<Outcome> + Send,
{
    let run = || {
        let cfg = Config::load(config)?;
        let warnings = cfg.basepoint_warnings()?;
        let mut out = with_jobs(jobs, || match cfg.manifold {
            ManifoldKind::Circle => circle(&cfg),
            ManifoldKind::Sphere => sphere(&cfg),
        })??;
        out.warnings.splice(0..0, warnings);
        Ok(out)
    };
    Outcome::from_result(run())
}

#[derive(Debug, Clone, PartialEq)]
pub struct EvalArgs {
    pub config: PathBuf,
    pub words: PathBuf,
    pub request: PathBuf,
    /// Overrides the config seed in the report.
    pub seed: Option<u64>,
    /// Override the request's kind and `k`.
    pub kind: Option<CocycleKind>,
    pub k: Option<usize>,
    pub jobs: Option<usize>,
}

/// One JSON line per requested tuple, in request order.
pub fn cmd_eval(args: &EvalArgs) -> Outcome {
    dispatch(
        &args.config,
        args.jobs,
        |c| eval_on::<Circle>(c, args),
        |c| eval_on::<Sphere>(c, args),
    )
}

fn eval_on<M: Setup>(cfg: &Config, args: &EvalArgs) -> Result<Outcome> {
    let words = WordTable::<M::Gen>::from_json(&read(&args.words)?)?;
    let mut req = EvalRequest::from_json(&read(&args.request)?)?;
    if let Some(kind) = args.kind {
        req.kind = kind;
    }
    if let Some(k) = args.k {
        req.k = k;
    }
    req.validate(M::DIM)?;
    let tuples = req
        .tuples
        .iter()
        .map(|t| words.tuple(t))
        .collect::<Result<Vec<_>>>()?;
    let z = M::zigzag(cfg)?;
    let cocycle = cocycles::cocycle(&*z, req.kind, req.k)?;
    let results: Vec<_> = tuples
        .par_iter()
        .map(|t| snap_value(req.kind, req.k, cocycle.eval(t)?, z.snap_tol()))
        .collect();

    let prov = Provenance {
        config_hash: cfg.hash(),
        seed: args.seed.unwrap_or(cfg.seed),
    };
    let mut stdout = String::new();
    let mut code = EXIT_OK;
    for (i, r) in results.iter().enumerate() {
        stdout.push_str(&line(&prov.stamp(eval_record(
            i,
            &req.tuples[i],
            &tuples[i],
            r,
        ))));
        if let (Err(e), EXIT_OK) = (r, code) {
            code = exit_code(e);
        }
    }
    Ok(Outcome {
        stdout,
        warnings: Vec::new(),
        code,
    })
}

#[derive(Debug, Clone, PartialEq)]
pub struct VerifyArgs {
    pub config: PathBuf,
    pub suite: String,
    pub samples: usize,
    pub seed: Option<u64>,
    /// Restrict per-`k` suites to one representative.
    pub k: Option<usize>,
    pub jobs: Option<usize>,
}

/// Runs one suite and prints its summary.
pub fn cmd_verify(args: &VerifyArgs) -> Outcome {
    if !cocycles::SUITES.contains(&args.suite.as_str()) {
        return Outcome::error(&Error::Parse(format!(
            "unknown suite {:?} (expected one of {})",
            args.suite,
            cocycles::SUITES.join(", ")
        )));
    }
    dispatch(
        &args.config,
        args.jobs,
        |c| verify_on::<Circle>(c, args),
        |c| verify_on::<Sphere>(c, args),
    )
}

fn verify_on<M: Setup>(cfg: &Config, args: &VerifyArgs) -> Result<Outcome> {
    let seed = args.seed.unwrap_or(cfg.seed);
    let ctx = SuiteContext::new(M::zigzag(cfg)?, M::sampler(cfg)?, seed).with_k(args.k);
    let report = run_suite(&ctx, &args.suite, args.samples)?;
    let prov = Provenance {
        config_hash: cfg.hash(),
        seed,
    };
    let code = if report.ok() { EXIT_OK } else { EXIT_IDENTITY };
    Ok(Outcome {
        stdout: line(&prov.stamp_serialize(&report)),
        warnings: Vec::new(),
        code,
    })
}

#[derive(Debug, Clone, PartialEq)]
pub struct EulerArgs {
    pub config: PathBuf,
    pub subgroup: String,
    /// Defaults to the degree of the cocycle.
    pub degree: Option<usize>,
    pub kind: CocycleKind,
    pub k: usize,
    pub seed: Option<u64>,
    pub jobs: Option<usize>,
}

/// A cocycle summed over one cycle.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CycleEvaluation {
    pub label: String,
    /// Order of the homology class, `None` for free or hand-built cycles.
    pub order: Option<i64>,
    pub terms: usize,
    pub raw: Value,
    /// Sum of snapped terms for `c`, `raw mod 1` for `b`, `raw` for the lift.
    pub value: Value,
    /// Largest change of `value` under the random perturbations; `None` for
    /// the lift, which is not a cocycle.
    pub max_deviation: Option<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Invariance {
    pub perturbations: usize,
    pub pass: bool,
    pub max_deviation: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct EulerReport {
    pub subgroup: String,
    pub order: usize,
    pub kind: CocycleKind,
    pub k: usize,
    pub homology: HomologySummary,
    pub evaluations: Vec<CycleEvaluation>,
    pub invariance: Option<Invariance>,
}

/// Homology, cycle evaluations and invariance check for `euler`.
pub fn cmd_euler(args: &EulerArgs) -> Outcome {
    dispatch(
        &args.config,
        args.jobs,
        |c| euler_on::<Circle>(c, args),
        |c| euler_on::<Sphere>(c, args),
    )
}

fn euler_on<M: Setup>(cfg: &Config, args: &EulerArgs) -> Result<Outcome> {
    let group = M::subgroup(&args.subgroup)?;
    let seed = args.seed.unwrap_or(cfg.seed);
    let expected = args.kind.degree(M::DIM);
    if let Some(d) = args.degree.filter(|&d| d != expected) {
        return Err(Error::Parse(format!(
            "{}_{} has degree {expected}, not {d}",
            args.kind, args.k
        )));
    }
    let z = M::zigzag(cfg)?;
    let report = euler_report(&*z, &group, args.kind, args.k, cfg.cap, seed)?;
    let code = match &report.invariance {
        Some(inv) if !inv.pass => EXIT_IDENTITY,
        _ => EXIT_OK,
    };
    let prov = Provenance {
        config_hash: cfg.hash(),
        seed,
    };
    Ok(Outcome {
        stdout: line(&prov.stamp_serialize(&report)),
        warnings: Vec::new(),
        code,
    })
}

/// Evaluates `kind_k` on the homology generators and hand-built cycles of
/// `group` in the cocycle's degree, and on [`PERTURBATIONS`] random
/// homologous cycles each.
pub fn euler_report<M: Manifold>(
    z: &dyn Zigzag<M>,
    group: &FiniteSubgroup<M::Gen>,
    kind: CocycleKind,
    k: usize,
    cap: usize,
    seed: u64,
) -> Result<EulerReport> {
    let degree = kind.degree(M::DIM);
    let cocycle = cocycles::cocycle(z, kind, k)?;
    let homology = find_cycles(group, degree, cap)?;

    let mut cycles: Vec<(String, Option<i64>, BarChain<usize>)> = homology
        .generators
        .iter()
        .enumerate()
        .map(|(i, g)| (format!("generator {i}"), g.order, g.cycle.clone()))
        .collect();
    cycles.extend(
        canonical_cycles(group, degree)
            .into_iter()
            .map(|(label, c)| (label, None, c)),
    );

    let invariant = kind != CocycleKind::BLift;
    let perturbed: Vec<Vec<BarChain<usize>>> = cycles
        .iter()
        .enumerate()
        .map(|(i, (_, _, c))| {
            if !invariant {
                return Vec::new();
            }
            (0..PERTURBATIONS)
                .map(|j| {
                    perturb(
                        group,
                        c,
                        PERTURBATION_TERMS,
                        &mut stream(seed, (i * PERTURBATIONS + j) as u64),
                    )
                })
                .collect()
        })
        .collect();

    // every chain is a sum over at most |G|^d tuples, so evaluate each once
    let tuples: BTreeSet<&Vec<usize>> = cycles
        .iter()
        .map(|(_, _, c)| c)
        .chain(perturbed.iter().flatten())
        .flat_map(|c| c.terms().iter().map(|(_, t)| t))
        .collect();
    let tuples: Vec<&Vec<usize>> = tuples.into_iter().collect();
    let values: Vec<Result<M::Scalar>> = tuples
        .par_iter()
        .map(|t| cocycle.eval(&group.words(t)))
        .collect();
    let mut table = BTreeMap::new();
    for (t, v) in tuples.into_iter().zip(values) {
        table.insert(t.clone(), v?);
    }

    let snap_tol = z.snap_tol();
    let sum = |c: &BarChain<usize>| -> Result<ChainValue<M::Scalar>> {
        if !c.boundary(group).is_zero() {
            return Err(Error::NotACycle);
        }
        let mut raw = M::Scalar::zero();
        let mut snapped = 0i64;
        for (coeff, t) in c.terms() {
            let v = table[t];
            raw = raw + v.scale(*coeff);
            if kind == CocycleKind::C {
                snapped += v.snap(snap_tol)?.value * coeff;
            }
        }
        Ok(ChainValue { raw, snapped })
    };

    let tol = if M::Scalar::EXACT { 0.0 } else { snap_tol };
    let mut evaluations = Vec::with_capacity(cycles.len());
    let mut worst = 0.0f64;
    for ((label, order, c), variants) in cycles.iter().zip(&perturbed) {
        let base = sum(c)?;
        let mut deviation = None;
        if invariant {
            let mut d = 0.0f64;
            for p in variants {
                d = d.max(base.distance(&sum(p)?, kind));
            }
            worst = worst.max(d);
            deviation = Some(d);
        }
        evaluations.push(CycleEvaluation {
            label: label.clone(),
            order: *order,
            terms: c.terms().len(),
            raw: base.raw.to_json(),
            value: base.value(kind),
            max_deviation: deviation,
        });
    }

    let invariance = invariant.then_some(Invariance {
        perturbations: PERTURBATIONS,
        pass: worst <= tol,
        max_deviation: worst,
    });
    Ok(EulerReport {
        subgroup: group.label.clone(),
        order: group.order(),
        kind,
        k,
        homology: homology.summary(),
        evaluations,
        invariance,
    })
}

struct ChainValue<S> {
    raw: S,
    snapped: i64,
}

impl<S: Scalar> ChainValue<S> {
    fn value(&self, kind: CocycleKind) -> Value {
        match kind {
            CocycleKind::C => json!(self.snapped),
            CocycleKind::B => self.raw.frac().to_json(),
            CocycleKind::BLift => self.raw.to_json(),
        }
    }

    fn distance(&self, other: &Self, kind: CocycleKind) -> f64 {
        match kind {
            CocycleKind::C => (self.snapped - other.snapped).unsigned_abs() as f64,
            _ => circle_distance(self.raw, other.raw),
        }
    }
}
