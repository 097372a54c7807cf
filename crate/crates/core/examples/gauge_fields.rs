//! Closed-form Berry connections and curvatures against the numerical
//! construction from eigenframes, plus the U(1)×SU(2) split of the E1 field.

use holonomy_lab::gauge_field::notes::{corrected_variant, published_variant, transcription_notes};
use holonomy_lab::gauge_field::{decomposition_residuals, FdSteps, FieldEvaluator, FieldSource};
use holonomy_lab::parametrization::{Level, Manifold, System};

fn main() -> holonomy_lab::Result<()> {
    let blocks = [
        (System::Su3Degenerate, Level::E1),
        (System::Su3Degenerate, Level::E3),
        (System::Su3Adjoint, Level::Minus),
        (System::Su3Adjoint, Level::Zero),
        (System::Su3Adjoint, Level::Plus),
        (System::DEFAULT_NONDEGENERATE, Level::Flag(1)),
        (System::DEFAULT_NONDEGENERATE, Level::Flag(3)),
    ];
    println!("{:<28} {:<6} {:>12} {:>12}", "system", "level", "max |ΔA|", "max |ΔF|");
    for (system, level) in blocks {
        let ev = FieldEvaluator::new(system, level)?;
        let (mut da, mut df) = (0.0_f64, 0.0_f64);
        for x in system.manifold().sample_points(20, 3, 0.05) {
            let a = ev.connection_at(&x, FieldSource::Closed)?;
            da = da.max(a.max_abs_diff(&ev.connection_at(&x, FieldSource::Numeric)?));
            let f = ev.curvature_at(&x, FieldSource::Closed)?;
            df = df.max(f.max_abs_diff(&ev.curvature_at(&x, FieldSource::Numeric)?));
        }
        println!("{:<28} {:<6} {:>12.2e} {:>12.2e}", system.to_string(), level.to_string(), da, df);
    }

    let mut worst = [0.0_f64; 4];
    for x in Manifold::CP2.sample_points(50, 4, 0.05) {
        for (w, r) in worst.iter_mut().zip(decomposition_residuals(&x)?) {
            *w = w.max(r);
        }
    }
    println!("\nE1 = U(1) + SU(2): |u1 - (i/3)η| {:.1e}, |F_E3 + (2i/3)η| {:.1e}, |*F + F| {:.1e}, |Tr| {:.1e}",
        worst[0], worst[1], worst[2], worst[3]);

    println!("\nprinted closed forms that disagree with the eigenframe construction:");
    let x = [1.1, 0.4, 2.3, 1.7];
    for note in transcription_notes() {
        let (Some(p), Some(c)) = (published_variant(&note, &x), corrected_variant(&note, &x)) else {
            continue;
        };
        println!("  {:<32} |printed - corrected| = {:.3}", note.id, (p - c).norm());
    }

    let coarse = FieldEvaluator::new(System::Su3Degenerate, Level::E1)?.with_steps(FdSteps {
        inner: 1e-3,
        outer: 1e-3,
    })?;
    let f = coarse.curvature_at(&x, FieldSource::Numeric)?;
    println!("\nanti-Hermitian residual of F at step 1e-3: {:.1e}", f.residual);
    Ok(())
}
