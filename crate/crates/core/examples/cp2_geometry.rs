//! Fubini-Study metric, Kähler form and Hodge duality on CP².

use std::f64::consts::PI;

use holonomy_lab::geometry::{
    form_inner_product, kahler_closed, kahler_pullback, metric_closed, metric_pullback, omega_normalization,
    volume_cp2, volume_cp2_monte_carlo, AxisRule, HodgeStar,
};
use holonomy_lab::linalg::C64;
use holonomy_lab::parametrization::{Manifold, ParamPoint};

fn main() -> holonomy_lab::Result<()> {
    let v = volume_cp2(32)?;
    let (mc, sigma) = volume_cp2_monte_carlo(200_000, 7);
    println!("volume: Gauss {v:.12}  Monte Carlo {mc:.3} ± {sigma:.3}  exact 9π²/2 = {:.12}", 4.5 * PI * PI);

    let eta = |x: &[f64]| kahler_closed(x).map(|v| C64::new(*v, 0.0));
    let ip = form_inner_product(eta, eta, 32, AxisRule::Gauss)?.re;
    println!("⟨η, η⟩ = {ip:.12}  (9π² = {:.12})", 9.0 * PI * PI);
    let (flux, top) = omega_normalization(256, 32)?;
    println!("ω = η/3π: ∫S² ω = {flux:.12}, ∫ ω∧ω = {top:.12}");

    let mut worst_metric = 0.0_f64;
    let mut worst_kahler = 0.0_f64;
    let mut worst_dual = 0.0_f64;
    for x in Manifold::CP2.sample_points(50, 1, 1e-2) {
        let p = ParamPoint::new(Manifold::CP2, x.clone(), 1.0)?;
        let g = metric_closed(&x, 1.0);
        worst_metric = worst_metric.max(g.max_abs_diff(&metric_pullback(&p, 1e-5)?));
        let w = kahler_closed(&x);
        let pulled = kahler_pullback(&p, 1e-5)?;
        for (a, b) in w.components().iter().zip(pulled.components()) {
            worst_kahler = worst_kahler.max((a - b).abs());
        }
        let dual = HodgeStar::new(&g)?.apply(&w);
        for (a, b) in dual.components().iter().zip(w.components()) {
            worst_dual = worst_dual.max((a - b).abs());
        }
    }
    println!("closed vs pulled-back metric {worst_metric:.1e}, Kähler form {worst_kahler:.1e}");
    println!("|*η - η| over 50 points {worst_dual:.1e}");
    Ok(())
}
