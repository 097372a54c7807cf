use std::f64::consts::PI;

use holonomy_lab::cli::RunConfig;
use holonomy_lab::dynamics::propagate;
use holonomy_lab::gauge_field::{FieldEvaluator, FieldSource};
use holonomy_lab::geometry::{kahler_closed, metric_closed, wedge_4form, HodgeStar, TwoForm};
use holonomy_lab::holonomy::{wilson_loop, wilson_loop_adaptive, wrap_phase, LoopPath, LoopShape};
use holonomy_lab::lie_algebra::Spin;
use holonomy_lab::linalg::{dagger, max_abs_diff, CMat, C64};
use holonomy_lab::parametrization::{Level, Manifold, System};
use holonomy_lab::topology::chern1;
use proptest::prelude::*;

fn cp2_point() -> impl Strategy<Value = Vec<f64>> {
    (0.05..PI - 0.05, 0.0..2.0 * PI, 0.0..4.0 * PI, 0.05..PI - 0.05).prop_map(|(b, a, g, t)| vec![b, a, g, t])
}

fn cp2_blocks() -> Vec<(System, Level)> {
    let mut out = vec![];
    for system in [System::Su3Degenerate, System::Su3Adjoint] {
        out.extend(system.levels().into_iter().map(|l| (system, l)));
    }
    out
}

fn anti_hermitian_defect(m: &CMat) -> f64 {
    max_abs_diff(m, &(-dagger(m)))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn fields_are_anti_hermitian(x in cp2_point()) {
        for (system, level) in cp2_blocks() {
            let ev = FieldEvaluator::new(system, level).unwrap();
            for a in ev.connection_at(&x, FieldSource::Closed).unwrap().components {
                prop_assert!(anti_hermitian_defect(&a) < 1e-12);
            }
            for f in ev.curvature_at(&x, FieldSource::Closed).unwrap().form.components() {
                prop_assert!(anti_hermitian_defect(f) < 1e-12);
            }
        }
    }

    #[test]
    fn kahler_form_is_self_dual(x in cp2_point()) {
        let w = kahler_closed(&x);
        let s = HodgeStar::new(&metric_closed(&x, 1.0)).unwrap().apply(&w);
        for (a, b) in s.components().iter().zip(w.components()) {
            prop_assert!((a - b).abs() < 1e-8);
        }
    }

    #[test]
    fn hodge_star_is_an_involution(x in cp2_point(), comps in prop::collection::vec(-2.0..2.0_f64, 6)) {
        let star = HodgeStar::new(&metric_closed(&x, 1.0)).unwrap();
        let w = TwoForm::from_components(4, comps);
        let back = star.apply(&star.apply(&w));
        for (a, b) in back.components().iter().zip(w.components()) {
            prop_assert!((a - b).abs() < 1e-8 * (1.0 + b.abs()));
        }
    }

    #[test]
    fn wedge_of_scalar_forms_is_symmetric(
        a in prop::collection::vec(-2.0..2.0_f64, 6),
        b in prop::collection::vec(-2.0..2.0_f64, 6),
    ) {
        let (fa, fb) = (TwoForm::from_components(4, a), TwoForm::from_components(4, b));
        prop_assert!((wedge_4form(&fa, &fb) - wedge_4form(&fb, &fa)).abs() < 1e-12);
    }

    #[test]
    fn latitude_phase_follows_solid_angle(theta0 in 0.1..3.0_f64, twice_j in 1u32..=4, k in 0u32..=4) {
        let k = k.min(twice_j);
        let twice_m = twice_j as i32 - 2 * k as i32;
        let system = System::Su2Linear { spin: Spin::from_twice(twice_j).unwrap() };
        let ev = FieldEvaluator::new(system, Level::Projection { twice_m }).unwrap();
        let h = wilson_loop(&ev, &LoopPath::latitude(theta0).unwrap(), 1024, FieldSource::Closed).unwrap();
        let want = -(twice_m as f64 / 2.0) * 2.0 * PI * (1.0 - theta0.cos());
        prop_assert!(wrap_phase(h.abelian_phase().unwrap() - want).abs() < 1e-5);
    }

    #[test]
    fn reversed_loop_inverts_holonomy(
        center in cp2_point(),
        r0 in 0.05..0.4_f64,
        r1 in 0.05..0.4_f64,
        axes in prop::sample::select(vec![[0usize, 3], [0, 1], [1, 2], [2, 3]]),
    ) {
        let mut center = center;
        center[0] = center[0].clamp(0.5, PI - 0.5);
        center[3] = center[3].clamp(0.5, PI - 0.5);
        let path = LoopPath::new(LoopShape::PlaneLoop { manifold: Manifold::CP2, axes, center, radii: [r0, r1] }).unwrap();
        let ev = FieldEvaluator::new(System::Su3Degenerate, Level::E1).unwrap();
        let w = wilson_loop_adaptive(&ev, &path, 512, 1 << 14, FieldSource::Closed).unwrap();
        let back = wilson_loop_adaptive(&ev, &path.reversed(), 512, 1 << 14, FieldSource::Closed).unwrap();
        prop_assert!(w.unitarity_residual() < 1e-10);
        prop_assert!(max_abs_diff(&back.w, &dagger(&w.w)) < 1e-7);
    }

    #[test]
    fn wrapped_phase_is_principal(x in -50.0..50.0_f64) {
        let w = wrap_phase(x);
        prop_assert!(w > -PI && w <= PI);
        let turns = (x - w) / (2.0 * PI);
        prop_assert!((turns - turns.round()).abs() < 1e-9);
    }

    #[test]
    fn loop_files_round_trip(theta0 in 0.01..3.1_f64, reversed in any::<bool>()) {
        let mut path = LoopPath::latitude(theta0).unwrap();
        if reversed {
            path = path.reversed();
        }
        let text = serde_json::to_string(&path).unwrap();
        prop_assert_eq!(LoopPath::from_json(&text).unwrap(), path);
    }

    #[test]
    fn run_config_round_trips_through_toml(grid in 4usize..64, tol in 1e-9..1e-1_f64, seed in any::<u64>()) {
        let cfg = RunConfig { grid: Some(grid), tol: Some(tol), seed: Some(seed), ..RunConfig::default() };
        let text = toml::to_string(&cfg).unwrap();
        prop_assert_eq!(RunConfig::from_toml(&text).unwrap(), cfg);
    }

    #[test]
    fn propagation_is_unitary(
        diag in prop::collection::vec(-2.0..2.0_f64, 3),
        off in prop::collection::vec(-1.0..1.0_f64, 6),
        total in 0.1..5.0_f64,
    ) {
        let h = move |t: f64| {
            let mut m = CMat::zeros(3, 3);
            for k in 0..3 {
                m[(k, k)] = C64::new(diag[k] * (1.0 + 0.3 * t.sin()), 0.0);
            }
            for (n, (i, j)) in [(0, 1), (0, 2), (1, 2)].into_iter().enumerate() {
                let z = C64::new(off[2 * n], off[2 * n + 1]) * t.cos();
                m[(i, j)] = z;
                m[(j, i)] = z.conj();
            }
            m
        };
        let u = propagate(h, &CMat::identity(3, 3), total, 400);
        prop_assert!(max_abs_diff(&(dagger(&u) * &u), &CMat::identity(3, 3)) < 1e-10);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(6))]

    #[test]
    fn monopole_charges_sum_to_zero(twice_j in 1u32..=5) {
        let system = System::Su2Linear { spin: Spin::from_twice(twice_j).unwrap() };
        let total: f64 = system
            .levels()
            .into_iter()
            .map(|l| chern1(&FieldEvaluator::new(system, l).unwrap(), FieldSource::Closed, 64).unwrap().value)
            .sum();
        prop_assert!(total.abs() < 1e-9);
    }
}
