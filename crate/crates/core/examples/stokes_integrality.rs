//! `w_2 = Ω - dη̄_1` is an integer cocycle: 1 on a simplex containing the
//! pole of `η̄_1`, 0 otherwise.

use euler_cocycles::config::Config;
use euler_cocycles::geometry::sphere::octahedral_triangulation;
use euler_cocycles::geometry::Sphere;
use euler_cocycles::zigzag::Zigzag;
use euler_cocycles::Scalar;
use nalgebra::{Rotation3, Unit, Vector3};

fn main() -> euler_cocycles::Result<()> {
    let z = Config::sphere().sphere_zigzag()?;
    let rot = Rotation3::from_axis_angle(&Unit::new_normalize(Vector3::new(0.2, 0.9, -0.4)), 0.35);
    for depth in 0..3 {
        let faces = octahedral_triangulation(depth, Some(rot.matrix()));
        let mut total = 0;
        let mut worst: f64 = 0.0;
        for [a, b, c] in faces.iter().cloned() {
            let s = z.w_top(&Sphere::cone_triangle(a, b, c)?)?;
            let snapped = s.snap(1e-6)?;
            total += snapped.value;
            worst = worst.max(snapped.residual);
        }
        println!(
            "{:>4} triangles: Σ w_2 = {total}, max residual {worst:.1e}",
            faces.len()
        );
    }
    Ok(())
}
