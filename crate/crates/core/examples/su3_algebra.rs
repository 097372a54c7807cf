//! Gell-Mann matrices, structure constants and the adjoint Cartan basis.

use holonomy_lab::lie_algebra::{
    adjoint_generators, cartan_off_diagonal, cartan_transform, gell_mann, spin_operators, transformed_generators, Spin,
    StructureConstants,
};

fn main() -> holonomy_lab::Result<()> {
    let gm = gell_mann();
    let f = StructureConstants::new();
    println!("f123 = {}  f458 = {:.6}  f678 = {:.6}", f.get(0, 1, 2), f.get(3, 4, 7), f.get(5, 6, 7));
    println!("Tr(λa λb) - 2δab      max {:.1e}", gm.trace_orthogonality_residual(2.0));
    println!("[λa, λb] - 2i f λc    max {:.1e}", gm.commutator_residual(&f, 2.0));
    println!("antisymmetry          max {:.1e}", f.antisymmetry_residual());
    println!("Jacobi                max {:.1e}", f.jacobi_residual());
    println!("f from traces vs table    {:.1e}", f.max_abs_diff(&StructureConstants::from_trace(&gm)));

    let adj = adjoint_generators(&f);
    println!("[Λa, Λb] + i f Λc    max {:.1e}", adj.commutator_residual(&f, -1.0));
    let ct = cartan_transform(&adj)?;
    let cartan = transformed_generators(&ct, &adj);
    println!("V†ΛV residual {:.1e}, Cartan off-diagonal {:.1e}", ct.residual(&adj), cartan_off_diagonal(&cartan));

    for twice in 1..=4 {
        let spin = Spin::from_twice(twice)?;
        let ops = spin_operators(spin);
        println!("j = {:<3} dim {}  hermitian residual {:.1e}", spin.value(), ops.dim(), ops.hermitian_residual());
    }
    Ok(())
}
