//! Berry phases and monopole charges of a spin in a rotating magnetic field.

use std::f64::consts::PI;

use holonomy_lab::holonomy::{berry_phase_su2, solid_angle, LoopPath};
use holonomy_lab::lie_algebra::Spin;
use holonomy_lab::topology::{su2_degenerate_flux, su2_monopole_charge};

fn main() -> holonomy_lab::Result<()> {
    let spin = Spin::new(1.5)?;
    for theta0 in [0.3, PI / 2.0, 2.7] {
        let path = LoopPath::latitude(theta0)?;
        let omega = solid_angle(&path, 20_000)?;
        print!("θ0 = {theta0:.3}  Ω = {omega:.6} ");
        for twice_m in [-3, -1, 1, 3] {
            let phase = berry_phase_su2(spin, twice_m, &path, 1024)?;
            print!(" m={:>4}: {:>9.6}", twice_m as f64 / 2.0, phase);
        }
        println!();
    }

    println!("\nmonopole charge c1 = -2m:");
    for twice_j in 1..=4u32 {
        let spin = Spin::from_twice(twice_j)?;
        let charges: Vec<String> = (0..=twice_j)
            .map(|k| twice_j as i32 - 2 * k as i32)
            .map(|twice_m| su2_monopole_charge(spin, twice_m, 128).map(|r| format!("{:+.6}", r.c1.unwrap().value)))
            .collect::<holonomy_lab::Result<_>>()?;
        println!("  j = {:<3} {}", spin.value(), charges.join(" "));
    }

    let r = su2_degenerate_flux(Spin::new(1.5)?, 128)?;
    println!("\nquadratic coupling j = 3/2, m = ±1/2 pair: total c1 = {:.2e}", r.c1.unwrap().value);
    for (k, c) in r.components.iter().enumerate() {
        println!("  diagonal {k}: {:+.6}", c.value);
    }
    Ok(())
}
