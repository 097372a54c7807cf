//! Verification suites: every reference value of the library recomputed and
//! compared, with a JSON report.

use std::f64::consts::PI;
use std::fmt;
use std::str::FromStr;
use std::time::Instant;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::dynamics::{is_monotone_decreasing, oracle_sweep, DEFAULT_SWEEP};
use crate::error::{Error, Result};
use crate::gauge_field::notes::{corrected_variant, published_variant, transcription_notes, NoteTarget};
use crate::gauge_field::{decomposition_residuals, FdSteps, FieldEvaluator, FieldSource};
use crate::geometry::{
    form_inner_product, kahler_closed, kahler_pullback, metric_closed, metric_pullback, omega_normalization,
    volume_cp2, AxisRule, HodgeStar,
};
use crate::holonomy::{wilson_loop, wrap_phase, LoopPath, LoopShape};
use crate::lie_algebra::{
    adjoint_generators, cartan_transform, gell_mann, published_cartan_residual, transformed_generators, Spin,
    StructureConstants,
};
use crate::linalg::{max_abs_diff, C64};
use crate::parametrization::{embedding_closed, embedding_coordinates_trace, Level, Manifold, ParamPoint, System};
use crate::topology::{chern1, chern_table, instanton_action, su2_degenerate_flux, su2_monopole_charge, TopologyOptions};

/// Where an expected value comes from.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Provenance {
    /// A value printed in the reference literature.
    Published,
    /// A value computed by an independent method (oracle, second formula).
    Derived,
    /// An exact identity, usually a residual that must vanish.
    Exact,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ToleranceKind {
    Absolute,
    Relative,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct Check {
    pub name: String,
    pub computed: f64,
    pub expected: f64,
    pub provenance: Provenance,
    pub abs_error: f64,
    pub rel_error: Option<f64>,
    pub tolerance: f64,
    pub tolerance_kind: ToleranceKind,
    pub pass: bool,
}

impl Check {
    pub fn new(
        name: impl Into<String>,
        computed: f64,
        expected: f64,
        provenance: Provenance,
        tolerance: f64,
        tolerance_kind: ToleranceKind,
    ) -> Self {
        let abs_error = (computed - expected).abs();
        let rel_error = (expected != 0.0).then(|| abs_error / expected.abs());
        let measured = match tolerance_kind {
            ToleranceKind::Absolute => Some(abs_error),
            ToleranceKind::Relative => rel_error,
        };
        Self {
            name: name.into(),
            computed,
            expected,
            provenance,
            abs_error,
            rel_error,
            tolerance,
            tolerance_kind,
            pass: measured.is_some_and(|e| e < tolerance),
        }
    }

    pub fn absolute(name: impl Into<String>, computed: f64, expected: f64, provenance: Provenance, tol: f64) -> Self {
        Self::new(name, computed, expected, provenance, tol, ToleranceKind::Absolute)
    }

    /// A residual that must vanish.
    pub fn residual(name: impl Into<String>, residual: f64, tol: f64) -> Self {
        Self::absolute(name, residual, 0.0, Provenance::Exact, tol)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Suite {
    Algebra,
    Monopole,
    Geometry,
    Fields,
    Decomposition,
    Chern,
    Holonomy,
}

impl Suite {
    pub const ALL: [Suite; 7] = [
        Suite::Algebra,
        Suite::Monopole,
        Suite::Geometry,
        Suite::Fields,
        Suite::Decomposition,
        Suite::Chern,
        Suite::Holonomy,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Suite::Algebra => "algebra",
            Suite::Monopole => "monopole",
            Suite::Geometry => "geometry",
            Suite::Fields => "fields",
            Suite::Decomposition => "decomposition",
            Suite::Chern => "chern",
            Suite::Holonomy => "holonomy",
        }
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Suite {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        Suite::ALL
            .into_iter()
            .find(|x| x.name() == s)
            .ok_or_else(|| Error::Parse(format!("unknown suite {s:?}")))
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct SuiteResult {
    pub suite: Suite,
    pub checks: Vec<Check>,
    pub wall_time_s: f64,
}

impl SuiteResult {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.pass)
    }
}

/// Measured disagreement of a printed closed form with the oracle.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct NoteMeasurement {
    pub id: String,
    pub published: String,
    pub corrected: String,
    /// Largest entrywise deviation of the printed form from the oracle.
    pub published_deviation: f64,
    /// Largest entrywise deviation of the corrected form from the oracle.
    pub corrected_deviation: f64,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct Environment {
    pub crate_version: String,
    pub os: String,
    pub arch: String,
    pub threads: usize,
}

impl Environment {
    pub fn current() -> Self {
        Self {
            crate_version: env!("CARGO_PKG_VERSION").to_string(),
            os: std::env::consts::OS.to_string(),
            arch: std::env::consts::ARCH.to_string(),
            threads: rayon::current_num_threads(),
        }
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct VerificationReport {
    pub passed: bool,
    pub config: VerifyConfig,
    pub suites: Vec<SuiteResult>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub transcription_notes: Vec<NoteMeasurement>,
    pub environment: Environment,
    pub wall_time_s: f64,
}

impl VerificationReport {
    pub fn failing(&self) -> Vec<&Check> {
        self.suites.iter().flat_map(|s| &s.checks).filter(|c| !c.pass).collect()
    }

    pub fn suite(&self, suite: Suite) -> Option<&SuiteResult> {
        self.suites.iter().find(|s| s.suite == suite)
    }
}

/// Resolution and tolerance knobs of a verification run.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct VerifyConfig {
    pub grid_2d: usize,
    pub grid_4d: usize,
    /// Also evaluate the Chern table on doubled grids at the 1e-6 gate.
    pub doubled: bool,
    /// Gate for "close to an integer" at the default grids.
    pub integer_tol: f64,
    pub field_points: usize,
    pub pointwise_points: usize,
    pub seed: u64,
    pub fd: FdSteps,
    pub segments: usize,
    /// Total times of the oracle sweep in units of 1/gap.
    pub oracle_times: Vec<f64>,
}

impl Default for VerifyConfig {
    fn default() -> Self {
        Self {
            grid_2d: crate::topology::DEFAULT_GRID_2D,
            grid_4d: crate::topology::DEFAULT_GRID_4D,
            doubled: true,
            integer_tol: crate::topology::INTEGER_GATE,
            field_points: 200,
            pointwise_points: 100,
            seed: 0,
            fd: FdSteps::default(),
            segments: 1024,
            oracle_times: DEFAULT_SWEEP.to_vec(),
        }
    }
}

impl VerifyConfig {
    pub fn validate(&self) -> Result<()> {
        if self.grid_2d < crate::topology::MIN_GRID_2D {
            return Err(Error::GridTooCoarse {
                found: self.grid_2d,
                min: crate::topology::MIN_GRID_2D,
            });
        }
        if self.grid_4d < crate::topology::MIN_GRID_4D {
            return Err(Error::GridTooCoarse {
                found: self.grid_4d,
                min: crate::topology::MIN_GRID_4D,
            });
        }
        if !(self.integer_tol > 0.0) {
            return Err(Error::Config(format!("tolerance must be positive, got {}", self.integer_tol)));
        }
        if self.segments < crate::holonomy::MIN_SEGMENTS {
            return Err(Error::TooFewSegments(self.segments));
        }
        self.fd.validate()
    }

    fn topology(&self) -> TopologyOptions {
        TopologyOptions {
            grid_2d: self.grid_2d,
            grid_4d: self.grid_4d,
            ..TopologyOptions::default()
        }
    }
}

/// Every (system, level) pair of the library with an explicit frame.
pub fn all_blocks() -> Vec<(System, Level)> {
    let mut out = vec![];
    for twice_j in 1..=5 {
        let spin = Spin::from_twice(twice_j).expect("valid spin");
        for system in [System::Su2Linear { spin }, System::Su2Quadratic { spin }] {
            out.extend(system.levels().into_iter().map(|l| (system, l)));
        }
    }
    for system in [System::Su3Degenerate, System::DEFAULT_NONDEGENERATE, System::Su3Adjoint] {
        out.extend(system.levels().into_iter().map(|l| (system, l)));
    }
    out
}

struct Timer(Instant);

impl Timer {
    fn finish(self, suite: Suite, checks: Vec<Check>) -> SuiteResult {
        SuiteResult {
            suite,
            checks,
            wall_time_s: self.0.elapsed().as_secs_f64(),
        }
    }
}

fn timer() -> Timer {
    Timer(Instant::now())
}

pub fn algebra_suite() -> Result<SuiteResult> {
    let t = timer();
    let gm = gell_mann();
    let f = StructureConstants::new();
    let adj = adjoint_generators(&f);
    let ct = cartan_transform(&adj)?;
    let cartan = transformed_generators(&ct, &adj);
    let checks = vec![
        Check::residual("gell-mann trace orthogonality Tr(λiλj) = 2δij", gm.trace_orthogonality_residual(2.0), 1e-10),
        Check::residual("gell-mann commutators [λi,λj] = 2i fijk λk", gm.commutator_residual(&f, 2.0), 1e-10),
        Check::residual("structure constants from traces", StructureConstants::from_trace(&gm).max_abs_diff(&f), 1e-10),
        Check::residual("structure constants antisymmetric", f.antisymmetry_residual(), 1e-14),
        Check::residual("structure constants Jacobi identity", f.jacobi_residual(), 1e-12),
        Check::residual("adjoint generators close under fijk", adj.commutator_residual(&f, -1.0), 1e-10),
        Check::residual("cartan transform diagonalizes Λ3, Λ8", ct.residual(&adj), 1e-12),
        Check::absolute(
            "cartan generators match printed matrices",
            published_cartan_residual(&cartan),
            0.0,
            Provenance::Published,
            1e-12,
        ),
    ];
    Ok(t.finish(Suite::Algebra, checks))
}

pub fn monopole_suite(cfg: &VerifyConfig) -> Result<SuiteResult> {
    let t = timer();
    let mut checks = vec![];
    for twice_j in 1..=5 {
        let spin = Spin::from_twice(twice_j)?;
        for m in spin.projections() {
            let twice_m = (2.0 * m).round() as i32;
            let r = su2_monopole_charge(spin, twice_m, cfg.grid_2d)?;
            checks.push(Check::absolute(
                format!("monopole charge j={spin} {}", Level::Projection { twice_m }),
                r.c1.expect("c1").value,
                -(twice_m as f64),
                Provenance::Published,
                1e-6,
            ));
        }
    }
    for twice_j in [1, 3, 5] {
        let spin = Spin::from_twice(twice_j)?;
        let r = su2_degenerate_flux(spin, cfg.grid_2d)?;
        let k = ((twice_j as f64 + 1.0) / 2.0).powi(2) - 1.0;
        checks.push(Check::absolute(
            format!("degenerate pair total flux j={spin}"),
            r.c1.expect("c1").value,
            0.0,
            Provenance::Published,
            1e-6,
        ));
        for (i, sign) in [(0, 1.0), (1, -1.0)] {
            checks.push(Check::absolute(
                format!("degenerate pair component {i} charge j={spin}"),
                r.components[i].value,
                sign * k,
                Provenance::Published,
                1e-6,
            ));
        }
    }
    Ok(t.finish(Suite::Monopole, checks))
}

pub fn geometry_suite(cfg: &VerifyConfig) -> Result<SuiteResult> {
    let t = timer();
    let mut checks = vec![];
    checks.push(Check::new(
        "CP2 volume 9π²/2",
        volume_cp2(cfg.grid_4d)?,
        4.5 * PI * PI,
        Provenance::Published,
        1e-6,
        ToleranceKind::Relative,
    ));
    let eta = |x: &[f64]| kahler_closed(x).map(|v| C64::new(*v, 0.0));
    let ip = form_inner_product(eta, eta, cfg.grid_4d, AxisRule::Gauss)?;
    checks.push(Check::absolute("⟨η,η⟩ = 9π²", ip.re, 9.0 * PI * PI, Provenance::Published, 1e-5));
    let points = Manifold::CP2.sample_points(cfg.pointwise_points, cfg.seed, 1e-3);
    let mut star_res = 0.0_f64;
    let mut metric_res = 0.0_f64;
    let mut kahler_res = 0.0_f64;
    for x in &points {
        let w = kahler_closed(x);
        let s = HodgeStar::new(&metric_closed(x, 1.0))?.apply(&w);
        for (a, b) in s.components().iter().zip(w.components()) {
            star_res = star_res.max((a - b).abs());
        }
        let p = ParamPoint::new(Manifold::CP2, x.clone(), 1.0)?;
        metric_res = metric_res.max(metric_pullback(&p, 1e-5)?.max_abs_diff(&metric_closed(x, 1.0)));
        let kp = kahler_pullback(&p, 1e-5)?;
        for (a, b) in kp.components().iter().zip(w.components()) {
            kahler_res = kahler_res.max((a - b).abs());
        }
    }
    checks.push(Check::residual("η self-dual pointwise", star_res, 1e-8));
    checks.push(Check::absolute(
        "metric closed form vs embedding pullback",
        metric_res,
        0.0,
        Provenance::Derived,
        1e-7,
    ));
    checks.push(Check::absolute(
        "Kähler form closed form vs embedding pullback",
        kahler_res,
        0.0,
        Provenance::Derived,
        1e-7,
    ));
    let (flux, vol) = omega_normalization(cfg.grid_2d, cfg.grid_4d)?;
    checks.push(Check::absolute("∫ω over the south sphere", flux, 1.0, Provenance::Published, 1e-4));
    checks.push(Check::absolute("∫ω∧ω over CP2", vol, 1.0, Provenance::Published, 1e-4));
    Ok(t.finish(Suite::Geometry, checks))
}

/// Largest closed-vs-numeric deviation of A and F over the given points.
pub fn field_agreement(ev: &FieldEvaluator, points: &[Vec<f64>]) -> Result<(f64, f64)> {
    let per_point: Vec<(f64, f64)> = points
        .par_iter()
        .map(|x| {
            let a = ev.connection_at(x, FieldSource::Numeric)?.max_abs_diff(&ev.connection_at(x, FieldSource::Closed)?);
            let f = ev.curvature_at(x, FieldSource::Numeric)?.max_abs_diff(&ev.curvature_at(x, FieldSource::Closed)?);
            Ok((a, f))
        })
        .collect::<Result<_>>()?;
    Ok(per_point
        .into_iter()
        .fold((0.0_f64, 0.0_f64), |(a, f), (x, y)| (a.max(x), f.max(y))))
}

pub fn fields_suite(cfg: &VerifyConfig) -> Result<SuiteResult> {
    let t = timer();
    let mut checks = vec![];
    for (system, level) in all_blocks() {
        let ev = FieldEvaluator::new(system, level)?.with_steps(cfg.fd)?;
        let points = system.manifold().sample_points(cfg.field_points, cfg.seed, 1e-3);
        let (a, f) = field_agreement(&ev, &points)?;
        checks.push(Check::absolute(
            format!("connection {system} {level} closed vs finite difference"),
            a,
            0.0,
            Provenance::Derived,
            1e-6,
        ));
        checks.push(Check::absolute(
            format!("curvature {system} {level} closed vs finite difference"),
            f,
            0.0,
            Provenance::Derived,
            1e-5,
        ));
    }
    Ok(t.finish(Suite::Fields, checks))
}

/// How far each printed closed form that needed correcting is from the
/// oracle, next to the corrected form.
pub fn measure_transcription_notes(cfg: &VerifyConfig) -> Result<Vec<NoteMeasurement>> {
    let points = Manifold::CP2.sample_points(cfg.pointwise_points.min(20), cfg.seed, 1e-3);
    transcription_notes()
        .iter()
        .map(|note| {
            let mut published = 0.0_f64;
            let mut corrected = 0.0_f64;
            for x in &points {
                match note.target {
                    NoteTarget::Embedding => {
                        let p = ParamPoint::new(Manifold::CP2, x.clone(), 1.0)?;
                        let trace = embedding_coordinates_trace(&p)?;
                        let closed = embedding_closed(x, 1.0);
                        let k = note.component;
                        published = published.max((-closed[k] - trace[k]).abs());
                        corrected = corrected.max((closed[k] - trace[k]).abs());
                    }
                    NoteTarget::Connection | NoteTarget::Curvature => {
                        let ev = FieldEvaluator::new(note.system, note.level.expect("field notes have a level"))?;
                        let oracle = match note.target {
                            NoteTarget::Connection => ev.connection_at(x, FieldSource::Numeric)?.components[note.component].clone(),
                            _ => ev.curvature_at(x, FieldSource::Numeric)?.form.components()[note.component].clone(),
                        };
                        let p = published_variant(note, x).expect("matrix note");
                        let c = corrected_variant(note, x).expect("matrix note");
                        published = published.max(max_abs_diff(&p, &oracle));
                        corrected = corrected.max(max_abs_diff(&c, &oracle));
                    }
                }
            }
            Ok(NoteMeasurement {
                id: note.id.to_string(),
                published: note.published.to_string(),
                corrected: note.corrected.to_string(),
                published_deviation: published,
                corrected_deviation: corrected,
            })
        })
        .collect()
}

pub fn decomposition_suite(cfg: &VerifyConfig) -> Result<SuiteResult> {
    let t = timer();
    let points = Manifold::CP2.sample_points(cfg.pointwise_points, cfg.seed, 1e-3);
    let mut worst = [0.0_f64; 4];
    for x in &points {
        let r = decomposition_residuals(x)?;
        for k in 0..4 {
            worst[k] = worst[k].max(r[k]);
        }
    }
    let checks = vec![
        Check::absolute("E1 U(1) part equals (i/3)η", worst[0], 0.0, Provenance::Published, 1e-8),
        Check::absolute("E3 curvature equals (−2i/3)η", worst[1], 0.0, Provenance::Published, 1e-8),
        Check::absolute("E1 SU(2) part anti-self-dual", worst[2], 0.0, Provenance::Published, 1e-8),
        Check::residual("E1 SU(2) part traceless", worst[3], 1e-12),
    ];
    Ok(t.finish(Suite::Decomposition, checks))
}

pub fn chern_suite(cfg: &VerifyConfig) -> Result<SuiteResult> {
    let t = timer();
    let mut checks = vec![];
    let opts = cfg.topology();
    let mut grids = vec![(opts, cfg.integer_tol, "")];
    if cfg.doubled {
        grids.push((opts.doubled(), 1e-6, " (doubled grid)"));
    }
    for (o, tol, suffix) in grids {
        for row in chern_table(&o)? {
            let inv = match row.invariant {
                crate::topology::Invariant::C1 => "c1",
                crate::topology::Invariant::C2 => "c2",
            };
            checks.push(Check::absolute(
                format!("{inv} {} {}{suffix}", row.system, row.level),
                row.estimate.value,
                row.expected as f64,
                Provenance::Published,
                tol,
            ));
        }
    }
    let n2 = cfg.grid_2d.min(64);
    for (system, level) in [
        (System::Su3Degenerate, Level::E1),
        (System::Su3Degenerate, Level::E3),
        (System::Su3Adjoint, Level::Minus),
    ] {
        let ev = FieldEvaluator::new(system, level)?.with_steps(cfg.fd)?;
        let closed = chern1(&ev, FieldSource::Closed, n2)?.value;
        let numeric = chern1(&ev, FieldSource::Numeric, n2)?.value;
        checks.push(Check::absolute(
            format!("c1 {system} {level} from finite-difference curvature"),
            numeric,
            closed,
            Provenance::Derived,
            1e-4,
        ));
    }
    for system in [System::Su3Degenerate, System::DEFAULT_NONDEGENERATE, System::Su3Adjoint] {
        let mut total = 0.0;
        for level in system.levels() {
            total += chern1(&FieldEvaluator::new(system, level)?, FieldSource::Closed, n2)?.value;
        }
        checks.push(Check::residual(format!("Σ c1 over levels of {system}"), total, 1e-8));
    }
    let ev = FieldEvaluator::new(System::Su3Degenerate, Level::E1)?;
    let action = instanton_action(&ev, FieldSource::Closed, cfg.grid_4d)?;
    checks.push(Check::absolute(
        "instanton action su3-degenerate E1 equals c2",
        action,
        1.0,
        Provenance::Derived,
        cfg.integer_tol,
    ));
    let ev = FieldEvaluator::new(System::Su3Adjoint, Level::Zero)?;
    let action = instanton_action(&ev, FieldSource::Closed, cfg.grid_4d)?;
    checks.push(Check::absolute(
        "instanton action su3-adjoint zero equals c2",
        action,
        3.0,
        Provenance::Published,
        cfg.integer_tol,
    ));
    Ok(t.finish(Suite::Chern, checks))
}

/// The non-Abelian reference loop on CP²: an ellipse in the (β, θ) plane.
pub fn reference_cp2_loop() -> LoopPath {
    LoopPath::new(LoopShape::PlaneLoop {
        manifold: Manifold::CP2,
        axes: [0, 3],
        center: vec![1.2, 0.3, 0.8, 1.5],
        radii: [0.5, 0.7],
    })
    .expect("valid reference loop")
}

pub const REFERENCE_LATITUDES: [f64; 5] = [0.3, 0.8, PI / 2.0, 2.1, 2.7];

pub fn holonomy_suite(cfg: &VerifyConfig) -> Result<SuiteResult> {
    let t = timer();
    let mut checks = vec![];
    for theta0 in REFERENCE_LATITUDES {
        let path = LoopPath::latitude(theta0)?;
        let omega = 2.0 * PI * (1.0 - theta0.cos());
        for (twice_j, twice_m) in [(1, 1), (2, 2), (3, -3), (5, 1)] {
            let ev = FieldEvaluator::new(
                System::Su2Linear {
                    spin: Spin::from_twice(twice_j)?,
                },
                Level::Projection { twice_m },
            )?;
            let h = wilson_loop(&ev, &path, cfg.segments, FieldSource::Closed)?;
            let m = twice_m as f64 / 2.0;
            let got = h.abelian_phase().expect("rank 1");
            let want = wrap_phase(-m * omega);
            checks.push(Check::absolute(
                format!("Berry phase −mΩ, θ0={theta0:.4}, j={}, m={m}", Spin::from_twice(twice_j)?),
                want + wrap_phase(got - want),
                want,
                Provenance::Derived,
                1e-5,
            ));
        }
    }
    let path = reference_cp2_loop();
    for (system, level) in [(System::Su3Degenerate, Level::E1), (System::Su3Adjoint, Level::Zero)] {
        let ev = FieldEvaluator::new(system, level)?;
        let w = wilson_loop(&ev, &path, cfg.segments, FieldSource::Closed)?;
        let wr = wilson_loop(&ev, &path.reversed(), cfg.segments, FieldSource::Closed)?;
        checks.push(Check::residual(
            format!("loop reversal inverts W, {system} {level}"),
            max_abs_diff(&wr.w, &w.w.adjoint()),
            1e-7,
        ));
        checks.push(Check::residual(format!("W unitary, {system} {level}"), w.unitarity_residual(), 1e-8));
        let sweep = oracle_sweep(system, level, &path, &cfg.oracle_times, 1.0)?;
        let distances: Vec<f64> = sweep.iter().map(|c| c.distance).collect();
        // Non-adiabatic corrections fall off as 1/T: gate at 10/(gap·T),
        // which is 1e-2 at T = 10³/gap.
        for c in &sweep {
            checks.push(Check::absolute(
                format!("oracle vs Wilson loop, {system} {level}, T={:.0}/gap", c.total_time_gap_units),
                c.distance,
                0.0,
                Provenance::Derived,
                10.0 / c.total_time_gap_units,
            ));
        }
        checks.push(Check::absolute(
            format!("oracle distance decreases over the T sweep, {system} {level}"),
            if is_monotone_decreasing(&distances, 0.0) { 1.0 } else { 0.0 },
            1.0,
            Provenance::Derived,
            0.5,
        ));
    }
    Ok(t.finish(Suite::Holonomy, checks))
}

pub fn run_suite(suite: Suite, cfg: &VerifyConfig) -> Result<SuiteResult> {
    match suite {
        Suite::Algebra => algebra_suite(),
        Suite::Monopole => monopole_suite(cfg),
        Suite::Geometry => geometry_suite(cfg),
        Suite::Fields => fields_suite(cfg),
        Suite::Decomposition => decomposition_suite(cfg),
        Suite::Chern => chern_suite(cfg),
        Suite::Holonomy => holonomy_suite(cfg),
    }
}

/// Runs the requested suites in order (all when `suites` is empty).
pub fn verify(cfg: &VerifyConfig, suites: &[Suite]) -> Result<VerificationReport> {
    cfg.validate()?;
    let start = Instant::now();
    let selected: Vec<Suite> = if suites.is_empty() { Suite::ALL.to_vec() } else { suites.to_vec() };
    let results = selected
        .iter()
        .map(|&s| run_suite(s, cfg))
        .collect::<Result<Vec<_>>>()?;
    let transcription_notes = if selected.contains(&Suite::Fields) {
        measure_transcription_notes(cfg)?
    } else {
        vec![]
    };
    Ok(VerificationReport {
        passed: results.iter().all(SuiteResult::passed),
        config: cfg.clone(),
        suites: results,
        transcription_notes,
        environment: Environment::current(),
        wall_time_s: start.elapsed().as_secs_f64(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn check_gates() {
        assert!(Check::absolute("x", 1.0005, 1.0, Provenance::Published, 1e-3).pass);
        assert!(!Check::absolute("x", 1.002, 1.0, Provenance::Published, 1e-3).pass);
        assert!(Check::new("x", 100.5, 100.0, Provenance::Published, 1e-2, ToleranceKind::Relative).pass);
        assert!(!Check::new("x", 1e-3, 0.0, Provenance::Exact, 1.0, ToleranceKind::Relative).pass);
    }

    #[test]
    fn suite_names_roundtrip() {
        for s in Suite::ALL {
            assert_eq!(s.name().parse::<Suite>().unwrap(), s);
        }
        assert!("nope".parse::<Suite>().is_err());
    }

    #[test]
    fn algebra_suite_passes() {
        assert!(algebra_suite().unwrap().passed());
    }

    #[test]
    fn notes_show_published_forms_are_off() {
        let cfg = VerifyConfig {
            pointwise_points: 5,
            ..VerifyConfig::default()
        };
        for n in measure_transcription_notes(&cfg).unwrap() {
            assert!(n.published_deviation > 1e-2, "{}", n.id);
            assert!(n.corrected_deviation < 1e-6, "{} {}", n.id, n.corrected_deviation);
        }
    }

    #[test]
    fn coarse_config_rejected() {
        let cfg = VerifyConfig {
            grid_4d: 2,
            ..VerifyConfig::default()
        };
        assert!(matches!(verify(&cfg, &[Suite::Algebra]), Err(Error::GridTooCoarse { .. })));
    }
}
