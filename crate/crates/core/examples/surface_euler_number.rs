//! Euler numbers of flat circle bundles over a closed surface.
//!
//! A genus-g surface with holonomies `a_i, b_i` has fundamental class
//! `Σ [a_i|b_i] - [b_i|a_i]` in the bar complex when the holonomies commute,
//! and the Euler number is `-⟨c_0, [Σ]⟩`. Rotation holonomies commute, so
//! these bundles are all flat with Euler number 0.

use euler_cocycles::cocycles;
use euler_cocycles::diffeo::Word;
use euler_cocycles::grouphomology::{evaluate_snapped, surface_cycle, CircleRotations};
use euler_cocycles::zigzag::CircleZigzag;
use euler_cocycles::Q;

fn main() -> euler_cocycles::Result<()> {
    let z = CircleZigzag::default();
    let c0 = cocycles::c(&z, 0)?;
    let holonomies = [
        vec![Q::new(1, 3), Q::new(2, 5)],
        vec![Q::new(1, 3), Q::new(2, 5), Q::new(3, 7), Q::new(5, 8)],
        vec![
            Q::new(1, 2),
            Q::new(1, 2),
            Q::new(9, 10),
            Q::new(1, 10),
            Q::new(4, 9),
            Q::new(2, 3),
        ],
    ];
    for images in holonomies {
        let cycle = surface_cycle(&CircleRotations, &images)?;
        let (raw, euler) = evaluate_snapped(&CircleRotations, &cycle, 1e-9, |t: &[Q]| {
            c0.eval(&t.iter().map(|&q| Word::rotation(q)).collect::<Vec<_>>())
        })?;
        println!(
            "genus {}: ⟨c_0, [Σ]⟩ = {raw}, Euler number {}",
            images.len() / 2,
            -euler
        );
    }
    Ok(())
}
