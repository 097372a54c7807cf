//! Characteristic numbers of every reference level at the default grids.
//!
//! Pass `--doubled` to rerun on grids twice as fine.

use holonomy_lab::topology::{chern_table, Invariant, TopologyOptions, INTEGER_GATE};

fn main() -> holonomy_lab::Result<()> {
    let mut opts = TopologyOptions::default();
    if std::env::args().any(|a| a == "--doubled") {
        opts = opts.doubled();
    }
    let start = std::time::Instant::now();
    println!("{:<28} {:<8} {:>3} {:>22} {:>10}", "system", "level", "inv", "value", "deviation");
    for row in chern_table(&opts)? {
        let inv = match row.invariant {
            Invariant::C1 => "c1",
            Invariant::C2 => "c2",
        };
        println!(
            "{:<28} {:<8} {:>3} {:>22.15} {:>10.2e} {}",
            row.system.to_string(),
            row.level.to_string(),
            inv,
            row.estimate.value,
            row.estimate.deviation,
            if row.passed(INTEGER_GATE) { "ok" } else { "MISMATCH" }
        );
    }
    println!("grids {}² / {}⁴ in {:.1?}", opts.grid_2d, opts.grid_4d, start.elapsed());
    Ok(())
}
