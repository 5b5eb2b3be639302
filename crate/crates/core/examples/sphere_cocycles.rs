//! Evaluating `c_0, c_1, c_2` and `b_0, b_1` on a tuple of sphere
//! diffeomorphisms built from rotations and twists.

use euler_cocycles::cocycles::{eval_b, eval_c};
use euler_cocycles::config::Config;
use euler_cocycles::diffeo::{SphereGenerator, Word};

fn main() -> euler_cocycles::Result<()> {
    let z = Config::sphere().sphere_zigzag()?;
    let rot = |axis, turns| SphereGenerator::rotation(axis, turns).map(Word::single);
    let twist =
        |axis, coeffs: &[f64]| SphereGenerator::twist(axis, coeffs.to_vec()).map(Word::single);

    let f = rot([0.0, 0.0, 1.0], 0.3)?.compose(&twist([1.0, 0.0, 0.0], &[0.1, -0.2])?);
    let g = twist([0.0, 1.0, 0.0], &[0.25])?;
    let h = rot([1.0, 1.0, 0.0], -0.4)?;
    let t = [f.clone(), g.clone(), h];

    for k in 0..=2 {
        let r = eval_c(&z, k, &t)?;
        println!(
            "c_{k}(f, g, h) = {:>2}   raw {:+.3e}  residual {:.1e}",
            r.raw.round(),
            r.raw,
            r.residual
        );
    }
    for k in 0..=1 {
        let r = eval_b(&z, k, &[f.clone(), g.clone()])?;
        println!("b_{k}(f, g) = {:.9} mod 1", r.raw.rem_euclid(1.0));
    }
    Ok(())
}
