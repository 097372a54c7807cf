//! Chern numbers by quadrature of the curvature of a level block.

use std::f64::consts::PI;
use std::time::Instant;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::gauge_field::{FieldEvaluator, FieldSource};
use crate::geometry::{metric_closed, wedge_4form, AxisRule, HodgeStar, TwoForm};
use crate::lie_algebra::Spin;
use crate::linalg::{CMat, C64};
use crate::parametrization::{Level, Manifold, System};
use crate::quadrature::{Rule1D, TensorGrid};

pub const DEFAULT_GRID_2D: usize = 256;
pub const DEFAULT_GRID_4D: usize = 32;
pub const MIN_GRID_2D: usize = 8;
pub const MIN_GRID_4D: usize = 4;
/// Distance to the nearest integer below which an estimate is accepted.
pub const INTEGER_GATE: f64 = 1e-3;

/// A real estimate of an integer invariant.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct IntegerEstimate {
    pub value: f64,
    pub nearest: i64,
    pub deviation: f64,
    /// Imaginary part left over by the quadrature; zero for an exact field.
    pub imaginary: f64,
}

impl IntegerEstimate {
    pub fn from_complex(z: C64) -> Self {
        let nearest = z.re.round();
        Self {
            value: z.re,
            nearest: nearest as i64,
            deviation: (z.re - nearest).abs(),
            imaginary: z.im,
        }
    }

    pub fn is_integer(&self, tol: f64) -> bool {
        self.deviation < tol
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct TopologyReport {
    pub system: System,
    pub level: Level,
    pub source: FieldSource,
    pub c1: Option<IntegerEstimate>,
    pub c2: Option<IntegerEstimate>,
    /// Charges of the diagonal entries of an SU(2) degenerate pair.
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub components: Vec<IntegerEstimate>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub instanton_action: Option<f64>,
    pub grid_2d: Option<usize>,
    pub grid_4d: Option<usize>,
    pub wall_time_s: f64,
}

impl TopologyReport {
    /// Every computed invariant lies within `tol` of an integer.
    pub fn accepted(&self, tol: f64) -> bool {
        self.c1.iter().chain(&self.c2).chain(&self.components).all(|e| e.is_integer(tol))
    }
}

fn check_grid(n: usize, min: usize) -> Result<()> {
    if n < min {
        return Err(Error::GridTooCoarse { found: n, min });
    }
    Ok(())
}

/// The 2-cycle used for c₁: the whole S² for SU(2) systems, and the south
/// sphere θ = π (with a = b = 0 on the flag manifold) otherwise. Returns the
/// grid and a map from grid point to chart coordinates.
fn two_cycle(manifold: Manifold, n: usize) -> (TensorGrid, impl Fn(&[f64]) -> Vec<f64> + Sync) {
    let grid = TensorGrid::new(vec![Rule1D::gauss(n, 0.0, PI), Rule1D::periodic(n, 0.0, 2.0 * PI)]);
    let embed = move |p: &[f64]| match manifold {
        Manifold::S2 => vec![p[0], p[1]],
        Manifold::CP2 => vec![p[0], p[1], 0.0, PI],
        Manifold::FLAG => vec![p[0], p[1], 0.0, PI, 0.0, 0.0],
    };
    (grid, embed)
}

fn curvature_form(ev: &FieldEvaluator, x: &[f64], source: FieldSource) -> TwoForm<CMat> {
    ev.curvature_at(x, source)
        .unwrap_or_else(|e| panic!("curvature at {x:?} failed: {e}"))
        .form
}

/// (i/2π)∫ Tr F over the 2-cycle of the level's manifold.
pub fn chern1(ev: &FieldEvaluator, source: FieldSource, n: usize) -> Result<IntegerEstimate> {
    check_grid(n, MIN_GRID_2D)?;
    // Surface the closed-form availability error before entering the grid.
    ev.curvature_at(&vec![0.5; ev.coords()], source)?;
    let (grid, embed) = two_cycle(ev.system().manifold(), n);
    let total: C64 = grid.integrate(|p| {
        let x = embed(p);
        let f = ev.curvature_at(&x, source).expect("checked above");
        f.form.get(0, 1).trace()
    });
    Ok(IntegerEstimate::from_complex(total * C64::new(0.0, 1.0 / (2.0 * PI))))
}

/// (1/8π²)[Tr(F∧F) − TrF∧TrF] at one point, as the coefficient of
/// dβ∧dα∧dγ∧dθ.
pub fn chern2_density(f: &TwoForm<CMat>) -> C64 {
    let tr = f.map(|m| m.trace());
    (wedge_4form(f, f).trace() - wedge_4form(&tr, &tr)) / (8.0 * PI * PI)
}

/// ∫ c₂ density of an arbitrary matrix-valued 2-form field over CP².
pub fn chern2_of<F>(field: F, n: usize) -> Result<IntegerEstimate>
where
    F: Fn(&[f64]) -> TwoForm<CMat> + Sync,
{
    check_grid(n, MIN_GRID_4D)?;
    let total = crate::geometry::integrate_cp2(n, AxisRule::Gauss, |x| chern2_density(&field(x)));
    Ok(IntegerEstimate::from_complex(total))
}

fn require_cp2(ev: &FieldEvaluator) -> Result<()> {
    let found = ev.system().manifold();
    if found != Manifold::CP2 {
        return Err(Error::ManifoldMismatch {
            expected: Manifold::CP2,
            found,
        });
    }
    Ok(())
}

/// (1/8π²)∫_{CP²}[Tr(F∧F) − TrF∧TrF] on an n⁴ Gauss–Legendre grid.
pub fn chern2(ev: &FieldEvaluator, source: FieldSource, n: usize) -> Result<IntegerEstimate> {
    require_cp2(ev)?;
    ev.curvature_at(&[0.5; 4], source)?;
    chern2_of(|x| curvature_form(ev, x, source), n)
}

/// −(1/8π²)∫ Tr(F∧*F) with the Hodge star of the unit CP² metric.
pub fn instanton_action_of<F>(field: F, n: usize) -> Result<f64>
where
    F: Fn(&[f64]) -> TwoForm<CMat> + Sync,
{
    check_grid(n, MIN_GRID_4D)?;
    let total = crate::geometry::integrate_cp2(n, AxisRule::Gauss, |x| {
        let star = HodgeStar::new(&metric_closed(x, 1.0)).expect("Gauss nodes avoid the chart boundary");
        let f = field(x);
        wedge_4form(&f, &star.apply(&f)).trace()
    });
    Ok(-total.re / (8.0 * PI * PI))
}

pub fn instanton_action(ev: &FieldEvaluator, source: FieldSource, n: usize) -> Result<f64> {
    require_cp2(ev)?;
    ev.curvature_at(&[0.5; 4], source)?;
    instanton_action_of(|x| curvature_form(ev, x, source), n)
}

/// Monopole charge (i/2π)∮F of the linear spin-j level m; equals −2m.
pub fn su2_monopole_charge(spin: Spin, twice_m: i32, n: usize) -> Result<TopologyReport> {
    let start = Instant::now();
    let system = System::Su2Linear { spin };
    let level = Level::Projection { twice_m };
    let ev = FieldEvaluator::new(system, level)?;
    let c1 = chern1(&ev, FieldSource::Closed, n)?;
    Ok(TopologyReport {
        system,
        level,
        source: FieldSource::Closed,
        c1: Some(c1),
        c2: None,
        components: vec![],
        instanton_action: None,
        grid_2d: Some(n),
        grid_4d: None,
        wall_time_s: start.elapsed().as_secs_f64(),
    })
}

/// Total flux and per-diagonal-entry charges of the quadratic spin-j
/// pair m = ±1/2.
pub fn su2_degenerate_flux(spin: Spin, n: usize) -> Result<TopologyReport> {
    let start = Instant::now();
    if spin.twice().is_multiple_of(2) {
        return Err(Error::InvalidProjection { j: spin.value(), m: 0.5 });
    }
    check_grid(n, MIN_GRID_2D)?;
    let system = System::Su2Quadratic { spin };
    let level = Level::Pair { twice_m: 1 };
    let ev = FieldEvaluator::new(system, level)?;
    let c1 = chern1(&ev, FieldSource::Closed, n)?;
    let (grid, embed) = two_cycle(Manifold::S2, n);
    let components = (0..2)
        .map(|k| {
            let total: C64 = grid.integrate(|p| curvature_form(&ev, &embed(p), FieldSource::Closed).get(0, 1)[(k, k)]);
            IntegerEstimate::from_complex(total * C64::new(0.0, 1.0 / (2.0 * PI)))
        })
        .collect();
    Ok(TopologyReport {
        system,
        level,
        source: FieldSource::Closed,
        c1: Some(c1),
        c2: None,
        components,
        instanton_action: None,
        grid_2d: Some(n),
        grid_4d: None,
        wall_time_s: start.elapsed().as_secs_f64(),
    })
}

/// Grid sizes and field source for [`report`].
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct TopologyOptions {
    pub grid_2d: usize,
    pub grid_4d: usize,
    pub source: FieldSource,
    pub with_action: bool,
}

impl Default for TopologyOptions {
    fn default() -> Self {
        Self {
            grid_2d: DEFAULT_GRID_2D,
            grid_4d: DEFAULT_GRID_4D,
            source: FieldSource::Closed,
            with_action: false,
        }
    }
}

impl TopologyOptions {
    pub fn doubled(self) -> Self {
        Self {
            grid_2d: self.grid_2d * 2,
            grid_4d: self.grid_4d * 2,
            ..self
        }
    }
}

/// c₁ for every level, c₂ (and optionally the action) for CP² levels.
pub fn report(system: System, level: Level, opts: &TopologyOptions) -> Result<TopologyReport> {
    let start = Instant::now();
    let ev = FieldEvaluator::new(system, level)?;
    let c1 = chern1(&ev, opts.source, opts.grid_2d)?;
    let cp2 = system.manifold() == Manifold::CP2;
    let c2 = if cp2 { Some(chern2(&ev, opts.source, opts.grid_4d)?) } else { None };
    let instanton_action = if cp2 && opts.with_action {
        Some(instanton_action(&ev, opts.source, opts.grid_4d)?)
    } else {
        None
    };
    Ok(TopologyReport {
        system,
        level,
        source: opts.source,
        c1: Some(c1),
        c2,
        components: vec![],
        instanton_action,
        grid_2d: Some(opts.grid_2d),
        grid_4d: cp2.then_some(opts.grid_4d),
        wall_time_s: start.elapsed().as_secs_f64(),
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Invariant {
    C1,
    C2,
}

/// One line of the reference table of characteristic numbers.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ChernRow {
    pub system: System,
    pub level: Level,
    pub invariant: Invariant,
    pub expected: i64,
    pub estimate: IntegerEstimate,
}

impl ChernRow {
    pub fn passed(&self, tol: f64) -> bool {
        self.estimate.nearest == self.expected && self.estimate.deviation < tol
    }
}

/// The reference entries: monopole charges, the CP² levels, the flag
/// level and the adjoint levels.
pub fn chern_targets() -> Vec<(System, Level, Invariant, i64)> {
    let su2 = |twice_j, twice_m| {
        (
            System::Su2Linear {
                spin: Spin::from_twice(twice_j).expect("valid spin"),
            },
            Level::Projection { twice_m },
            Invariant::C1,
            -(twice_m as i64),
        )
    };
    vec![
        su2(1, 1),
        su2(3, -3),
        su2(4, 0),
        (System::Su3Degenerate, Level::E3, Invariant::C1, 1),
        (System::Su3Degenerate, Level::E1, Invariant::C1, -1),
        (System::Su3Degenerate, Level::E1, Invariant::C2, 1),
        (System::DEFAULT_NONDEGENERATE, Level::Flag(3), Invariant::C1, 1),
        (System::Su3Adjoint, Level::Minus, Invariant::C1, 3),
        (System::Su3Adjoint, Level::Zero, Invariant::C1, 0),
        (System::Su3Adjoint, Level::Plus, Invariant::C1, -3),
        (System::Su3Adjoint, Level::Minus, Invariant::C2, 3),
        (System::Su3Adjoint, Level::Zero, Invariant::C2, 3),
        (System::Su3Adjoint, Level::Plus, Invariant::C2, 3),
    ]
}

pub fn chern_table(opts: &TopologyOptions) -> Result<Vec<ChernRow>> {
    chern_targets()
        .into_iter()
        .map(|(system, level, invariant, expected)| {
            let ev = FieldEvaluator::new(system, level)?;
            let estimate = match invariant {
                Invariant::C1 => chern1(&ev, opts.source, opts.grid_2d)?,
                Invariant::C2 => chern2(&ev, opts.source, opts.grid_4d)?,
            };
            Ok(ChernRow {
                system,
                level,
                invariant,
                expected,
                estimate,
            })
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn monopole_charges() {
        for twice_j in 1..=5 {
            let spin = Spin::from_twice(twice_j).unwrap();
            for m in spin.projections() {
                let twice_m = (2.0 * m).round() as i32;
                let r = su2_monopole_charge(spin, twice_m, 32).unwrap();
                let c = r.c1.unwrap();
                assert!((c.value + twice_m as f64).abs() < 1e-10, "j={spin} m={twice_m}: {c:?}");
            }
        }
    }

    #[test]
    fn degenerate_pair_flux() {
        for (twice_j, k) in [(1, 0), (3, 3), (5, 8)] {
            let r = su2_degenerate_flux(Spin::from_twice(twice_j).unwrap(), 32).unwrap();
            assert!(r.c1.unwrap().value.abs() < 1e-10);
            assert!((r.components[0].value - k as f64).abs() < 1e-10);
            assert!((r.components[1].value + k as f64).abs() < 1e-10);
        }
    }

    #[test]
    fn first_chern_numbers_on_south_sphere() {
        for (sys, l, want) in [
            (System::Su3Degenerate, Level::E3, 1.0),
            (System::Su3Degenerate, Level::E1, -1.0),
            (System::Su3Adjoint, Level::Minus, 3.0),
            (System::Su3Adjoint, Level::Zero, 0.0),
            (System::Su3Adjoint, Level::Plus, -3.0),
            (System::DEFAULT_NONDEGENERATE, Level::Flag(3), 1.0),
        ] {
            let ev = FieldEvaluator::new(sys, l).unwrap();
            let c = chern1(&ev, FieldSource::Closed, 16).unwrap();
            assert!((c.value - want).abs() < 1e-10, "{sys} {l}: {c:?}");
        }
    }

    #[test]
    fn second_chern_number_e1() {
        let ev = FieldEvaluator::new(System::Su3Degenerate, Level::E1).unwrap();
        let c = chern2(&ev, FieldSource::Closed, 12).unwrap();
        assert!((c.value - 1.0).abs() < 1e-6, "{c:?}");
        assert!(c.imaginary.abs() < 1e-12);
    }

    #[test]
    fn abelian_level_has_no_second_chern_density() {
        let ev = FieldEvaluator::new(System::Su3Degenerate, Level::E3).unwrap();
        let f = ev.curvature_at(&[1.0, 2.0, 3.0, 2.5], FieldSource::Closed).unwrap();
        assert!(chern2_density(&f.form).norm() < 1e-15);
    }

    #[test]
    fn coarse_grid_rejected() {
        let ev = FieldEvaluator::new(System::Su3Degenerate, Level::E1).unwrap();
        assert!(matches!(chern2(&ev, FieldSource::Closed, 2), Err(Error::GridTooCoarse { .. })));
        let ev = FieldEvaluator::new(System::Su3Adjoint, Level::Zero).unwrap();
        assert!(chern1(&ev, FieldSource::Closed, 4).is_err());
    }

    #[test]
    fn second_chern_needs_cp2() {
        let ev = FieldEvaluator::new(System::DEFAULT_NONDEGENERATE, Level::Flag(1)).unwrap();
        assert!(matches!(chern2(&ev, FieldSource::Closed, 8), Err(Error::ManifoldMismatch { .. })));
    }
}
