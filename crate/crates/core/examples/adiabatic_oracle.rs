//! Slow Schrödinger evolution around a loop converging to the Wilson loop
//! of the occupied degenerate level.

use holonomy_lab::dynamics::{compare_with_wilson, evolve, EvolutionOptions, DEFAULT_SWEEP};
use holonomy_lab::holonomy::{LoopPath, LoopShape};
use holonomy_lab::parametrization::{Level, Manifold, System};

fn main() -> holonomy_lab::Result<()> {
    let path = LoopPath::new(LoopShape::PlaneLoop {
        manifold: Manifold::CP2,
        axes: [0, 3],
        center: vec![1.2, 0.3, 0.8, 1.5],
        radii: [0.5, 0.7],
    })?;
    for (system, level) in [(System::Su3Degenerate, Level::E1), (System::Su3Adjoint, Level::Zero)] {
        println!("{system} {level}");
        println!("{:>10} {:>8} {:>12} {:>12} {:>10}", "T·gap", "steps", "‖W_T - W‖", "leakage", "time");
        for t_gap in DEFAULT_SWEEP {
            let options = EvolutionOptions::in_gap_units(system, level, t_gap, 1.0)?;
            let run = evolve(system, level, &path, options)?;
            let c = compare_with_wilson(&run)?;
            println!(
                "{:>10.0} {:>8} {:>12.3e} {:>12.1e} {:>9.2}s",
                t_gap, c.steps, c.distance, c.leakage, c.wall_time_s
            );
        }
    }
    Ok(())
}
