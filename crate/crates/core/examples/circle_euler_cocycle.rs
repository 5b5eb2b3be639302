//! The Euler cocycle of circle rotations, exactly.
//!
//! `c_0(R_a, R_b) = -floor(ã + b̃)` with `ã` the lift in `[0, 1)`, and
//! `b_0(R_s) = -s mod 1`.

use euler_cocycles::cocycles::{eval_b, eval_b_lift, eval_c};
use euler_cocycles::diffeo::Word;
use euler_cocycles::zigzag::CircleZigzag;
use euler_cocycles::Q;

fn main() -> euler_cocycles::Result<()> {
    let z = CircleZigzag::default();
    let pairs = [
        (Q::new(1, 2), Q::new(3, 4)),
        (Q::new(1, 3), Q::new(1, 3)),
        (Q::new(-1, 5), Q::new(7, 10)),
    ];
    for (a, b) in pairs {
        let t = [Word::rotation(a), Word::rotation(b)];
        let c0 = eval_c(&z, 0, &t)?;
        let c1 = eval_c(&z, 1, &t)?;
        println!("c_0(R_{a}, R_{b}) = {}   c_1 = {}", c0.raw, c1.raw);
    }
    for s in [Q::new(1, 3), Q::new(5, 4), Q::new(-2, 7)] {
        let w = [Word::rotation(s)];
        let b = eval_b(&z, 0, &w)?;
        let lift = eval_b_lift(&z, &w)?;
        println!("b_0(R_{s}) = {} mod 1   (real lift {})", b.raw, lift.raw);
    }
    Ok(())
}
