//! The identities tying the representatives together, checked on random
//! samples: the zig-zag equations, the telescoping `c_k = c_{k-1} - δ⟨w, Δ⟩`,
//! the Leibniz rule and `δb̄ = c_n`.

use std::sync::Arc;

use euler_cocycles::cocycles::{run_suite, SuiteContext};
use euler_cocycles::config::Config;

fn main() -> euler_cocycles::Result<()> {
    let circle = Config::circle();
    let ctx = SuiteContext::new(
        Arc::new(circle.circle_zigzag()?),
        Arc::new(circle.circle_sampler()),
        1,
    );
    for suite in [
        "zigzag",
        "telescoping",
        "leibniz",
        "lift",
        "cocycle_c",
        "cocycle_b",
    ] {
        let r = run_suite(&ctx, suite, 200)?;
        println!(
            "circle {suite:<12} passed {:>5}  failed {}  max residual {}",
            r.passed, r.failed, r.max_residual
        );
    }

    let sphere = Config::sphere();
    let ctx = SuiteContext::new(
        Arc::new(sphere.sphere_zigzag()?),
        Arc::new(sphere.sphere_sampler()?),
        1,
    );
    for suite in ["zigzag", "telescoping", "lift"] {
        let r = run_suite(&ctx, suite, 20)?;
        println!(
            "sphere {suite:<12} passed {:>5}  failed {}  max residual {:.1e}",
            r.passed, r.failed, r.max_residual
        );
        for (name, s) in &r.checks {
            println!("    {name:<22} {:.1e}", s.max_residual);
        }
    }
    Ok(())
}
