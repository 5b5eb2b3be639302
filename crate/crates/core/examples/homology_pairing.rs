//! Pairing the cocycles with homology of finite rotation groups.
//!
//! `b_0` is nonzero on `H_1(Z/m)`, the integral `c_2` vanishes on the torsion
//! group `H_3(Z/m)`, and `b_1` on `H_2` of the Klein four-group is 2-torsion.

use euler_cocycles::cocycles::CocycleKind;
use euler_cocycles::config::Config;
use euler_cocycles::diffeo::{CircleRotation, SphereGenerator};
use euler_cocycles::grouphomology::{FiniteSubgroup, DEFAULT_CAP};
use euler_cocycles::runner::{euler_report, EulerReport};

fn show(r: &EulerReport) {
    println!(
        "{} (order {}), H_{} torsion {:?}",
        r.subgroup, r.order, r.homology.degree, r.homology.torsion
    );
    for e in &r.evaluations {
        println!("    {:<16} {}_{} = {}", e.label, r.kind, r.k, e.value);
    }
    if let Some(inv) = &r.invariance {
        println!(
            "    invariant under {} perturbations: {}",
            inv.perturbations, inv.pass
        );
    }
}

fn main() -> euler_cocycles::Result<()> {
    let circle = Config::circle().circle_zigzag()?;
    for m in [3, 5] {
        let g = FiniteSubgroup::<CircleRotation>::cyclic(m)?;
        show(&euler_report(
            &circle,
            &g,
            CocycleKind::B,
            0,
            DEFAULT_CAP,
            0,
        )?);
    }

    let sphere = Config::sphere().sphere_zigzag()?;
    let g = FiniteSubgroup::<SphereGenerator>::cyclic(4, [0.0, 0.0, 1.0])?;
    show(&euler_report(
        &sphere,
        &g,
        CocycleKind::C,
        2,
        DEFAULT_CAP,
        0,
    )?);

    // the half turns move arcs across both ends of every coordinate axis
    let mut cfg = Config::sphere();
    cfg.pole = [0.267, -0.534, -0.802];
    let g = FiniteSubgroup::klein4()?;
    show(&euler_report(
        &cfg.sphere_zigzag()?,
        &g,
        CocycleKind::B,
        1,
        DEFAULT_CAP,
        0,
    )?);
    Ok(())
}
