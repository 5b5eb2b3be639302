//! End-to-end acceptance criteria, one PASS/FAIL line each.

use std::panic::{self, AssertUnwindSafe};
use std::path::PathBuf;
use std::sync::Arc;
use std::time::{Duration, Instant};

use euler_cocycles::cocycles::{
    self, boundedness_sample, eval_b, eval_c, run_suite, verify_cocycle, CocycleKind, SnappedValue,
    SuiteContext, SuiteReport,
};
use euler_cocycles::config::Config;
use euler_cocycles::diffeo::{CircleRotation, Word};
use euler_cocycles::geometry::sphere::octahedral_triangulation;
use euler_cocycles::geometry::{Circle, Sphere};
use euler_cocycles::grouphomology::{
    evaluate_snapped, surface_cycle, CircleRotations, FiniteSubgroup, DEFAULT_CAP,
};
use euler_cocycles::runner::{self, euler_report, EulerReport, VerifyArgs};
use euler_cocycles::sampling::stream;
use euler_cocycles::zigzag::{CircleZigzag, SphereZigzag, Zigzag};
use euler_cocycles::{Scalar, Q};
use nalgebra::{Rotation3, Unit, Vector3};
use serde_json::{json, Value};

type Outcome = std::result::Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

fn ensure(cond: bool, msg: impl Into<String>) -> std::result::Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg.into())
    }
}

fn circle() -> (Arc<CircleZigzag>, SuiteContext<Circle>) {
    let cfg = Config::circle();
    let z = Arc::new(cfg.circle_zigzag().unwrap());
    let ctx = SuiteContext::new(z.clone(), Arc::new(cfg.circle_sampler()), 11);
    (z, ctx)
}

fn sphere_with(cfg: &Config, seed: u64) -> (Arc<SphereZigzag>, SuiteContext<Sphere>) {
    let z = Arc::new(cfg.sphere_zigzag().unwrap());
    let ctx = SuiteContext::new(z.clone(), Arc::new(cfg.sphere_sampler().unwrap()), seed);
    (z, ctx)
}

fn sphere() -> (Arc<SphereZigzag>, SuiteContext<Sphere>) {
    sphere_with(&Config::sphere(), 23)
}

fn suite_ok(r: &SuiteReport, tol: f64) -> std::result::Result<(), String> {
    ensure(r.passed > 0, format!("{} ran no checks", r.suite))?;
    ensure(
        r.ok() && r.max_residual <= tol,
        format!(
            "{} on {}: {} failed, max residual {:e}, first {:?}",
            r.suite,
            r.manifold,
            r.failed,
            r.max_residual,
            r.failures.first()
        ),
    )
}

fn timed(limit: Duration, what: &str, t: Instant) -> std::result::Result<Duration, String> {
    let e = t.elapsed();
    ensure(e < limit, format!("{what} took {e:?}, limit {limit:?}"))?;
    Ok(e)
}

/// `(p mod q, q)` for a rotation word.
fn frac_parts(w: &Word<CircleRotation>) -> (i128, i128) {
    let t = w.total_turns();
    let (p, q) = (*t.numer() as i128, *t.denom() as i128);
    (p.rem_euclid(q), q)
}

fn integer(v: Option<SnappedValue<Q>>) -> i64 {
    match v {
        Some(SnappedValue::Integer(i)) => i,
        other => panic!("expected an integer, got {other:?}"),
    }
}

fn circle_exactness() -> Outcome {
    let (z, ctx) = circle();
    let t = Instant::now();
    for i in 0..1000 {
        let mut rng = stream(101, i);
        let tuple = ctx.sampler.tuple(&mut rng, 2);
        let r0 = eval_c(&*z, 0, &tuple).map_err(|e| e.to_string())?;
        let r1 = eval_c(&*z, 1, &tuple).map_err(|e| e.to_string())?;
        // floor(ã + b̃) ∈ {0, 1} by cross-multiplication
        let ((a, qa), (b, qb)) = (frac_parts(&tuple[0]), frac_parts(&tuple[1]));
        let expected = if a * qb + b * qa >= qa * qb { -1 } else { 0 };
        ensure(
            integer(r0.snapped) == expected,
            format!("c_0{tuple:?} = {:?}, expected {expected}", r0.snapped),
        )?;
        ensure(
            r0.raw == Q::from_integer(expected),
            "c_0 raw is not the integer",
        )?;
        ensure(
            r1.snapped == r0.snapped && r1.raw == r0.raw,
            format!("c_1 ≠ c_0 on {tuple:?}"),
        )?;
        ensure(r0.residual == 0.0 && r1.residual == 0.0, "nonzero residual")?;
    }
    let e = timed(Duration::from_secs(1), "1000 tuples", t)?;
    Ok(format!(
        "1000 tuples, c_0 = -floor(a+b) and c_1 = c_0, residual 0, {e:.2?}"
    ))
}

fn circle_b_shadow() -> Outcome {
    let (z, ctx) = circle();
    let t = Instant::now();
    let lift = cocycles::b_lift(&*z)
        .map_err(|e| e.to_string())?
        .coboundary();
    let c1 = cocycles::c(&*z, 1).map_err(|e| e.to_string())?;
    for i in 0..1000 {
        let mut rng = stream(202, i);
        let w = ctx.sampler.word(&mut rng);
        let r = eval_b(&*z, 0, std::slice::from_ref(&w)).map_err(|e| e.to_string())?;
        let (p, q) = frac_parts(&w);
        let expected = Q::new(((-p).rem_euclid(q)) as i64, q as i64);
        ensure(
            r.snapped == Some(SnappedValue::Circle(expected)),
            format!("b_0({w:?}) = {:?}, expected {expected}", r.snapped),
        )?;

        let pair = ctx.sampler.tuple(&mut rng, 2);
        let (lhs, rhs) = (
            lift.eval(&pair).map_err(|e| e.to_string())?,
            c1.eval(&pair).map_err(|e| e.to_string())?,
        );
        ensure(
            lhs == rhs,
            format!("δb̄ = {lhs} but c_1 = {rhs} on {pair:?}"),
        )?;
    }
    let e = timed(Duration::from_secs(1), "1000 samples", t)?;
    Ok(format!(
        "1000 samples, b_0(R_s) = -s mod 1 and δb̄ = c_1 exactly, {e:.2?}"
    ))
}

fn cocycle_identities() -> Outcome {
    let (_, ctx) = circle();
    let r = verify_cocycle(&ctx, CocycleKind::C, 1000);
    suite_ok(&r, 0.0)?;
    let circle_checks = r.passed;

    let (_, ctx) = sphere();
    let t = Instant::now();
    let r = verify_cocycle(&ctx, CocycleKind::C, 100);
    // a check passes only if the pre-snap residual is within 1e-6 and the
    // snapped coboundary is exactly 0
    suite_ok(&r, 1e-6)?;
    let e = timed(Duration::from_secs(600), "sphere cocycle_c", t)?;
    Ok(format!(
        "circle {circle_checks} checks residual 0; sphere {} checks over 100 4-tuples, max pre-snap residual {:.1e}, snapped δc = 0, {e:.1?}",
        r.passed, r.max_residual
    ))
}

fn leibniz() -> Outcome {
    let (_, ctx) = circle();
    let t = Instant::now();
    let r = run_suite(&ctx, "leibniz", 200).map_err(|e| e.to_string())?;
    suite_ok(&r, 0.0)?;
    let e = timed(Duration::from_secs(5), "leibniz", t)?;
    Ok(format!(
        "{} exact checks over {} pairings, {e:.2?}",
        r.passed,
        r.checks.len()
    ))
}

fn telescoping() -> Outcome {
    let (_, ctx) = circle();
    let r = run_suite(&ctx.with_k(Some(1)), "telescoping", 50).map_err(|e| e.to_string())?;
    suite_ok(&r, 0.0)?;
    let (_, ctx) = sphere();
    let r2 = run_suite(&ctx, "telescoping", 50).map_err(|e| e.to_string())?;
    suite_ok(&r2, 1e-6)?;
    ensure(
        r2.checks.contains_key("c_1") && r2.checks.contains_key("c_2"),
        "sphere k = 1, 2 not both checked",
    )?;
    Ok(format!(
        "circle k=1 exact ({} checks); sphere k=1,2 max residual {:.1e}",
        r.passed, r2.max_residual
    ))
}

fn zigzag() -> Outcome {
    let (_, ctx) = circle();
    let r = run_suite(&ctx, "zigzag", 50).map_err(|e| e.to_string())?;
    suite_ok(&r, 0.0)?;
    let (_, ctx) = sphere();
    let r2 = run_suite(&ctx, "zigzag", 50).map_err(|e| e.to_string())?;
    suite_ok(&r2, 1e-6)?;
    for (name, s) in &r2.checks {
        if name.starts_with("dDelta") {
            ensure(
                s.max_residual == 0.0,
                format!("{name} not structurally exact"),
            )?;
        }
    }
    Ok(format!(
        "circle exact; sphere {} checks, max residual {:.1e}",
        r2.passed, r2.max_residual
    ))
}

fn stokes() -> Outcome {
    let (z, ctx) = sphere();
    let r = run_suite(&ctx, "stokes", 100).map_err(|e| e.to_string())?;
    suite_ok(&r, 1e-6)?;
    let rot = Rotation3::from_axis_angle(&Unit::new_normalize(Vector3::new(0.3, -0.5, 0.8)), 0.7);
    let mut totals = Vec::new();
    for depth in 0..2 {
        let mut total = 0;
        for [a, b, c] in octahedral_triangulation(depth, Some(rot.matrix())) {
            let s = Sphere::cone_triangle(a, b, c).map_err(|e| e.to_string())?;
            total += z
                .w_top(&s)
                .and_then(|v| v.snap(1e-6))
                .map_err(|e| e.to_string())?
                .value;
        }
        totals.push(total);
    }
    ensure(
        totals.iter().all(|&t| t == 1),
        format!("octahedral w_2 totals {totals:?}"),
    )?;
    Ok(format!(
        "100 simplices, max residual {:.1e}; octahedral totals {totals:?}",
        r.max_residual
    ))
}

fn euler(
    z: &dyn Zigzag<Sphere>,
    group: &FiniteSubgroup<euler_cocycles::diffeo::SphereGenerator>,
    kind: CocycleKind,
    k: usize,
) -> std::result::Result<EulerReport, String> {
    euler_report(z, group, kind, k, DEFAULT_CAP, 5).map_err(|e| e.to_string())
}

fn homology_pairing() -> Outcome {
    let mut notes = Vec::new();

    // (a) c_2 kills torsion in H_3 of cyclic rotation groups
    let (z, _) = sphere();
    for m in 2..=5 {
        let group =
            FiniteSubgroup::<euler_cocycles::diffeo::SphereGenerator>::cyclic(m, [0.0, 0.0, 1.0])
                .map_err(|e| e.to_string())?;
        let r = euler(&*z, &group, CocycleKind::C, 2)?;
        ensure(
            r.homology.torsion == vec![m as i64],
            format!("H_3(Z/{m}) = {:?}", r.homology.torsion),
        )?;
        ensure(!r.evaluations.is_empty(), "no cycles evaluated")?;
        for ev in &r.evaluations {
            ensure(
                ev.value == json!(0),
                format!("cyclic:{m} {}: c_2 = {}", ev.label, ev.value),
            )?;
        }
        let inv = r.invariance.as_ref().ok_or("no invariance check")?;
        ensure(
            inv.pass && inv.perturbations == 20,
            format!("cyclic:{m} not invariant: {inv:?}"),
        )?;
    }
    notes.push("(a) c_2 = 0 on H_3(Z/m), m=2..5, invariant".to_string());

    // (b) b_0 on [R_{1/m}]
    let (cz, _) = circle();
    for m in 2..=5 {
        let group = FiniteSubgroup::<CircleRotation>::cyclic(m).map_err(|e| e.to_string())?;
        let r = euler_report(&*cz, &group, CocycleKind::B, 0, DEFAULT_CAP, 5)
            .map_err(|e| e.to_string())?;
        let g = r
            .evaluations
            .iter()
            .find(|e| e.label == "[g]")
            .ok_or("no [g] cycle")?;
        let expected = format!("{}/{}", m - 1, m);
        ensure(
            g.value == json!(expected),
            format!("b_0[R_1/{m}] = {}, expected {expected}", g.value),
        )?;
        ensure(
            r.invariance.as_ref().is_some_and(|i| i.pass),
            "b_0 not invariant",
        )?;
    }
    notes.push("(b) b_0[R_1/m] = (m-1)/m, m=2..5".to_string());

    // (c) b_1 on H_2(klein4); half turns about all three axes force the pole
    // off the coordinate axes
    let mut cfg = Config::sphere();
    cfg.pole = [0.267, -0.534, -0.802];
    let (kz, _) = sphere_with(&cfg, 5);
    let group = FiniteSubgroup::klein4().map_err(|e| e.to_string())?;
    let r = euler(&*kz, &group, CocycleKind::B, 1)?;
    ensure(
        r.homology.torsion == vec![2],
        format!("H_2(klein4) = {:?}", r.homology.torsion),
    )?;
    let mut values = Vec::new();
    for ev in &r.evaluations {
        let v = ev.value.as_f64().ok_or("b_1 value not a number")?;
        ensure(
            (2.0 * v).circle_residual() < 1e-6,
            format!("{}: 2·b_1 = {} is not 0 mod 1", ev.label, 2.0 * v),
        )?;
        values.push(format!("{}: {v:.6}", ev.label));
    }
    let inv = r.invariance.as_ref().ok_or("no invariance check")?;
    ensure(inv.pass, format!("klein4 b_1 not invariant: {inv:?}"))?;
    notes.push(format!("(c) klein4 b_1 {}", values.join(", ")));

    // (d) genus-2 surface with commuting rotation holonomies
    let images = [Q::new(1, 3), Q::new(2, 5), Q::new(3, 7), Q::new(5, 8)];
    let cycle = surface_cycle(&CircleRotations, &images).map_err(|e| e.to_string())?;
    for k in 0..=1 {
        let c = cocycles::c(&*cz, k).map_err(|e| e.to_string())?;
        let (raw, snapped) = evaluate_snapped(&CircleRotations, &cycle, 1e-6, |t: &[Q]| {
            let words: Vec<_> = t.iter().map(|&q| Word::rotation(q)).collect();
            c.eval(&words)
        })
        .map_err(|e| e.to_string())?;
        ensure(
            snapped == 0 && raw == Q::from_integer(0),
            format!("genus-2 Euler number via c_{k}: {raw}"),
        )?;
    }
    notes.push("(d) genus-2 Euler number 0".to_string());
    Ok(notes.join("; "))
}

fn boundedness() -> Outcome {
    let (_, ctx) = circle();
    let r = boundedness_sample(&ctx.with_k(Some(0)), 1000);
    suite_ok(&r, 0.0)?;
    let b = r.bounded.as_ref().ok_or("no stats")?;
    ensure(b.sup == 1, format!("circle sup|c_0| = {}", b.sup))?;

    let (_, ctx) = sphere();
    let r2 = boundedness_sample(&ctx, 500);
    let b2 = r2.bounded.as_ref().ok_or("no stats")?;
    let counted: usize = b2.histogram.values().sum();
    ensure(
        counted == 500,
        format!("only {counted} of 500 sphere values snapped"),
    )?;
    Ok(format!(
        "circle sup|c_0| = 1 {:?}; sphere sup|c_2| = {} {:?}",
        b.histogram, b2.sup, b2.histogram
    ))
}

fn write_config(dir: &tempfile::TempDir, name: &str, v: Value) -> PathBuf {
    let path = dir.path().join(name);
    std::fs::write(&path, v.to_string()).unwrap();
    path
}

fn determinism() -> Outcome {
    let dir = tempfile::tempdir().map_err(|e| e.to_string())?;
    let circle = write_config(
        &dir,
        "circle.json",
        json!({"manifold": "circle", "seed": 9}),
    );
    let sphere = write_config(
        &dir,
        "sphere.json",
        json!({"manifold": "sphere", "seed": 9}),
    );
    let runs = [
        (&circle, "cocycle_c", 300),
        (&circle, "bounded", 300),
        (&sphere, "stokes", 40),
        (&sphere, "zigzag", 10),
    ];
    for (config, suite, samples) in runs {
        let out: Vec<_> = [Some(1), Some(8), Some(8), Some(1)]
            .into_iter()
            .map(|jobs| {
                runner::cmd_verify(&VerifyArgs {
                    config: config.clone(),
                    suite: suite.to_string(),
                    samples,
                    seed: None,
                    k: None,
                    jobs,
                })
            })
            .collect();
        ensure(
            out[0].code == 0,
            format!("{suite} failed: {}", out[0].stdout),
        )?;
        ensure(
            out.iter().all(|o| o.stdout == out[0].stdout),
            format!("{suite} reports differ across runs"),
        )?;
    }
    Ok("cocycle_c, bounded, stokes and zigzag byte-identical across jobs 1 and 8".into())
}

fn main() {
    let criteria: [Criterion; 10] = [
        ("circle exactness", circle_exactness),
        ("circle b-shadow", circle_b_shadow),
        ("cocycle identities", cocycle_identities),
        ("leibniz", leibniz),
        ("telescoping", telescoping),
        ("zig-zag", zigzag),
        ("stokes integrality", stokes),
        ("homology pairing", homology_pairing),
        ("boundedness", boundedness),
        ("determinism", determinism),
    ];
    panic::set_hook(Box::new(|_| {}));
    let mut failed = 0;
    for (i, (name, f)) in criteria.iter().enumerate() {
        let outcome = panic::catch_unwind(AssertUnwindSafe(f)).unwrap_or_else(|p| {
            let msg = p
                .downcast_ref::<String>()
                .cloned()
                .or_else(|| p.downcast_ref::<&str>().map(|s| s.to_string()));
            Err(format!("panicked: {}", msg.unwrap_or_default()))
        });
        match outcome {
            Ok(detail) => println!("criterion {:>2} {name}: PASS ({detail})", i + 1),
            Err(why) => {
                failed += 1;
                println!("criterion {:>2} {name}: FAIL ({why})", i + 1);
            }
        }
    }
    println!(
        "acceptance: {} passed, {failed} failed",
        criteria.len() - failed
    );
    if failed > 0 {
        std::process::exit(1);
    }
}
