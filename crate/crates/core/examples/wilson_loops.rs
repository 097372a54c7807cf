//! Path-ordered Wilson loops: Abelian Berry phases and non-Abelian holonomies.

use holonomy_lab::gauge_field::{FieldEvaluator, FieldSource};
use holonomy_lab::holonomy::{wilson_loop, wrap_phase, LoopPath, LoopShape};
use holonomy_lab::parametrization::{Level, Manifold, System};

fn main() -> holonomy_lab::Result<()> {
    let spin_half = System::Su2Linear {
        spin: holonomy_lab::lie_algebra::Spin::new(0.5)?,
    };
    let ev = FieldEvaluator::new(spin_half, Level::Projection { twice_m: 1 })?;
    for theta0 in [0.5, 1.0, 2.0] {
        let path = LoopPath::latitude(theta0)?;
        let h = wilson_loop(&ev, &path, 1024, FieldSource::Closed)?;
        let expected = -0.5 * 2.0 * std::f64::consts::PI * (1.0 - theta0.cos());
        println!(
            "spin-1/2 latitude θ0={theta0}: phase {:+.10}  -mΩ mod 2π {:+.10}  line integral + closure {:+.10}",
            h.abelian_phase().unwrap(),
            wrap_phase(expected),
            h.continuous_phase.unwrap()
        );
    }

    let path = LoopPath::new(LoopShape::PlaneLoop {
        manifold: Manifold::CP2,
        axes: [0, 3],
        center: vec![1.2, 0.3, 0.8, 1.5],
        radii: [0.5, 0.7],
    })?;
    for (system, level) in [(System::Su3Degenerate, Level::E1), (System::Su3Adjoint, Level::Zero)] {
        let ev = FieldEvaluator::new(system, level)?;
        let h = wilson_loop(&ev, &path, 1024, FieldSource::Closed)?;
        let back = wilson_loop(&ev, &path.reversed(), 1024, FieldSource::Closed)?;
        let det = h.w.determinant();
        println!(
            "\n{system} {level}: trace {:.8}  det {:.8}  |W W⁻¹ - 1| {:.1e}  doubling {:.1e}",
            h.trace(),
            det,
            (&h.w * &back.w - nalgebra::DMatrix::identity(h.dim(), h.dim())).norm(),
            h.doubling_error
        );
        println!("{:.8}", h.w);
    }
    Ok(())
}
