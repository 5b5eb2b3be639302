//! Empirical distribution of the integral cocycles: `c_0` on the circle takes
//! only the values 0 and -1, and `c_2` on the sphere stays small.

use std::sync::Arc;

use euler_cocycles::cocycles::{boundedness_sample, SuiteContext};
use euler_cocycles::config::Config;

fn main() -> euler_cocycles::Result<()> {
    let circle = Config::circle();
    let ctx = SuiteContext::new(
        Arc::new(circle.circle_zigzag()?),
        Arc::new(circle.circle_sampler()),
        7,
    );
    let r = boundedness_sample(&ctx.with_k(Some(0)), 2000);
    let b = r.bounded.expect("stats");
    println!(
        "circle c_0 over {} pairs: sup {}  {:?}",
        r.samples, b.sup, b.histogram
    );

    let sphere = Config::sphere();
    let ctx = SuiteContext::new(
        Arc::new(sphere.sphere_zigzag()?),
        Arc::new(sphere.sphere_sampler()?),
        7,
    );
    let r = boundedness_sample(&ctx, 200);
    let b = r.bounded.expect("stats");
    println!(
        "sphere c_2 over {} triples: sup {}  {:?} ({} degenerate draws replaced)",
        r.samples, b.sup, b.histogram, r.skipped
    );
    Ok(())
}
