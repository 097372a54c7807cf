//! Adiabatic connections A = ⟨i|Ū†dŪ|j⟩ and curvatures F = dA + A∧A.
//!
//! Two independent sources are provided for every (system, level) pair:
//! closed-form tables ([`closed`]) and central differences of the explicit
//! frame Ū. Eigenvectors always come from the frame, never from an
//! eigensolver, so the numeric fields live in the same smooth gauge as the
//! closed forms.

pub mod closed;
pub mod notes;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::geometry::{HodgeStar, TwoForm};
use crate::linalg::{block, c, commutator, dagger, identity, max_abs, max_abs_diff, CMat, C64};
use crate::parametrization::{FrameBuilder, Level, LevelBlock, ParamPoint, System};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum FieldSource {
    Closed,
    Numeric,
}

/// Finite-difference steps: `inner` for Ū, `outer` for differentiating A.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct FdSteps {
    pub inner: f64,
    pub outer: f64,
}

impl Default for FdSteps {
    fn default() -> Self {
        Self {
            inner: 1e-5,
            outer: 1e-4,
        }
    }
}

impl FdSteps {
    pub fn validate(&self) -> Result<()> {
        for h in [self.inner, self.outer] {
            if !(1e-7..=1e-3).contains(&h) {
                return Err(Error::StepOutOfRange(h));
            }
        }
        Ok(())
    }
}

/// A_m at one point; each component is anti-Hermitian.
#[derive(Debug, Clone)]
pub struct ConnectionField {
    pub system: System,
    pub level: Level,
    pub source: FieldSource,
    pub coords: Vec<f64>,
    pub components: Vec<CMat>,
    /// Hermitian part discarded by the numeric construction (zero for
    /// closed forms).
    pub residual: f64,
}

/// F_mn at one point.
#[derive(Debug, Clone)]
pub struct CurvatureField {
    pub system: System,
    pub level: Level,
    pub source: FieldSource,
    pub coords: Vec<f64>,
    pub form: TwoForm<CMat>,
    pub residual: f64,
}

impl ConnectionField {
    pub fn anti_hermitian_residual(&self) -> f64 {
        self.components
            .iter()
            .map(crate::linalg::anti_hermitian_residual)
            .fold(0.0, f64::max)
    }

    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        self.components
            .iter()
            .zip(&other.components)
            .map(|(a, b)| max_abs_diff(a, b))
            .fold(0.0, f64::max)
    }
}

impl CurvatureField {
    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        self.form
            .components()
            .iter()
            .zip(other.form.components())
            .map(|(a, b)| max_abs_diff(a, b))
            .fold(0.0, f64::max)
    }

    /// Tr F as a complex two-form.
    pub fn trace(&self) -> TwoForm<C64> {
        self.form.map(|m| m.trace())
    }
}

/// Evaluates the fields of one level block from either source.
#[derive(Debug, Clone)]
pub struct FieldEvaluator {
    pub block: LevelBlock,
    builder: FrameBuilder,
    pub steps: FdSteps,
}

impl FieldEvaluator {
    pub fn new(system: System, level: Level) -> Result<Self> {
        let block = system.level_block(level)?;
        Ok(Self {
            builder: system.frame_builder(),
            block,
            steps: FdSteps::default(),
        })
    }

    pub fn with_steps(mut self, steps: FdSteps) -> Result<Self> {
        steps.validate()?;
        self.steps = steps;
        Ok(self)
    }

    pub fn coords(&self) -> usize {
        self.system().manifold().dim()
    }

    pub fn system(&self) -> System {
        self.block.system
    }

    pub fn level(&self) -> Level {
        self.block.level
    }

    pub fn dim(&self) -> usize {
        self.block.dim()
    }

    pub fn frame_builder(&self) -> &FrameBuilder {
        &self.builder
    }

    /// Rest-frame eigenvectors of the level carried along by Ū:
    /// columns Ū(x)|i⟩ for i in the block.
    pub fn eigenframe(&self, x: &[f64]) -> CMat {
        let u = self.builder.at(x);
        let all: Vec<usize> = (0..u.nrows()).collect();
        block(&u, &all, &self.block.indices)
    }

    /// A_m by central differences of Ū, anti-Hermitian part kept, with the
    /// largest discarded Hermitian entry returned alongside.
    pub fn connection_numeric_raw(&self, x: &[f64], h: f64) -> (Vec<CMat>, f64) {
        let u = self.builder.at(x);
        let ud = dagger(&u);
        let idx = &self.block.indices;
        let mut residual = 0.0_f64;
        let comps = (0..self.coords())
            .map(|m| {
                let mut xp = x.to_vec();
                let mut xm = x.to_vec();
                xp[m] += h;
                xm[m] -= h;
                let du = (self.builder.at(&xp) - self.builder.at(&xm)).map(|z| z / (2.0 * h));
                let full = &ud * du;
                let a = block(&full, idx, idx);
                let ah = (&a - a.adjoint()).map(|z| z * 0.5);
                residual = residual.max(max_abs(&(&a + a.adjoint())) * 0.5);
                ah
            })
            .collect();
        (comps, residual)
    }

    /// F_mn = ∂_m A_n − ∂_n A_m + [A_m, A_n] from numeric connections.
    pub fn curvature_numeric_raw(&self, x: &[f64], steps: FdSteps) -> (TwoForm<CMat>, f64) {
        let n = self.coords();
        let (a, mut residual) = self.connection_numeric_raw(x, steps.inner);
        let h = steps.outer;
        let da: Vec<Vec<CMat>> = (0..n)
            .map(|m| {
                let mut xp = x.to_vec();
                let mut xm = x.to_vec();
                xp[m] += h;
                xm[m] -= h;
                let (ap, rp) = self.connection_numeric_raw(&xp, steps.inner);
                let (am, rm) = self.connection_numeric_raw(&xm, steps.inner);
                residual = residual.max(rp).max(rm);
                ap.iter()
                    .zip(&am)
                    .map(|(p, q)| (p - q).map(|z| z / (2.0 * h)))
                    .collect()
            })
            .collect();
        let form = TwoForm::from_fn(n, |m, k| &da[m][k] - &da[k][m] + commutator(&a[m], &a[k]));
        (form, residual)
    }

    fn check_residual(residual: f64) -> Result<()> {
        if residual > 1e-6 {
            return Err(Error::FiniteDifferenceResidual(residual));
        }
        Ok(())
    }

    fn check_point(&self, point: &ParamPoint) -> Result<()> {
        let expected = self.system().manifold();
        if point.manifold() != expected {
            return Err(Error::ManifoldMismatch {
                expected,
                found: point.manifold(),
            });
        }
        Ok(())
    }

    pub fn connection_at(&self, x: &[f64], source: FieldSource) -> Result<ConnectionField> {
        let (components, residual) = match source {
            FieldSource::Closed => (closed::connection(&self.block, x)?, 0.0),
            FieldSource::Numeric => {
                let (a, r) = self.connection_numeric_raw(x, self.steps.inner);
                Self::check_residual(r)?;
                (a, r)
            }
        };
        Ok(ConnectionField {
            system: self.system(),
            level: self.level(),
            source,
            coords: x.to_vec(),
            components,
            residual,
        })
    }

    pub fn curvature_at(&self, x: &[f64], source: FieldSource) -> Result<CurvatureField> {
        let (form, residual) = match source {
            FieldSource::Closed => (closed::curvature(&self.block, x)?, 0.0),
            FieldSource::Numeric => {
                let (f, r) = self.curvature_numeric_raw(x, self.steps);
                Self::check_residual(r)?;
                (f, r)
            }
        };
        Ok(CurvatureField {
            system: self.system(),
            level: self.level(),
            source,
            coords: x.to_vec(),
            form,
            residual,
        })
    }

    pub fn connection(&self, point: &ParamPoint, source: FieldSource) -> Result<ConnectionField> {
        self.check_point(point)?;
        self.connection_at(point.angles(), source)
    }

    pub fn curvature(&self, point: &ParamPoint, source: FieldSource) -> Result<CurvatureField> {
        self.check_point(point)?;
        self.curvature_at(point.angles(), source)
    }
}

/// Numeric connection at a point with an explicit step.
pub fn connection_numeric(
    system: System,
    level: Level,
    point: &ParamPoint,
    h: f64,
) -> Result<ConnectionField> {
    let ev = FieldEvaluator::new(system, level)?.with_steps(FdSteps {
        inner: h,
        outer: FdSteps::default().outer,
    })?;
    ev.connection(point, FieldSource::Numeric)
}

pub fn connection_closed(system: System, level: Level, point: &ParamPoint) -> Result<ConnectionField> {
    FieldEvaluator::new(system, level)?.connection(point, FieldSource::Closed)
}

/// Numeric curvature with inner step `h` and outer step `10 h` (capped).
pub fn curvature_numeric(
    system: System,
    level: Level,
    point: &ParamPoint,
    h: f64,
) -> Result<CurvatureField> {
    let ev = FieldEvaluator::new(system, level)?.with_steps(FdSteps {
        inner: h,
        outer: (10.0 * h).min(1e-3),
    })?;
    ev.curvature(point, FieldSource::Numeric)
}

pub fn curvature_closed(system: System, level: Level, point: &ParamPoint) -> Result<CurvatureField> {
    FieldEvaluator::new(system, level)?.curvature(point, FieldSource::Closed)
}

/// U(1) ⊕ SU(2) split of a rank-2 curvature: u1 = Tr F / 2, su2 = F − u1·I.
#[derive(Debug, Clone)]
pub struct Decomposition {
    pub u1: TwoForm<C64>,
    pub su2: TwoForm<CMat>,
}

pub fn decompose_degenerate(f: &CurvatureField) -> Result<Decomposition> {
    let d = f.form.components()[0].nrows();
    if d != 2 {
        return Err(Error::DimensionMismatch {
            expected: 2,
            found: d,
        });
    }
    let u1 = f.form.map(|m| m.trace() * 0.5);
    let id = identity(2);
    let su2 = f.form.zip_map(&f.form, |m, _| m - id.map(|z| z * (m.trace() * 0.5)));
    Ok(Decomposition { u1, su2 })
}

/// Pointwise residuals of the CP² decomposition at raw coordinates:
/// (|u1 − (i/3)η|, |F(E₃) − (−2i/3)η|, |*su2 + su2|, |Tr su2|).
pub fn decomposition_residuals(x: &[f64]) -> Result<[f64; 4]> {
    let e1 = FieldEvaluator::new(System::Su3Degenerate, Level::E1)?;
    let e3 = FieldEvaluator::new(System::Su3Degenerate, Level::E3)?;
    let f1 = e1.curvature_at(x, FieldSource::Closed)?;
    let f3 = e3.curvature_at(x, FieldSource::Closed)?;
    let dec = decompose_degenerate(&f1)?;
    let eta = crate::geometry::kahler_closed(x);
    let mut r = [0.0_f64; 4];
    for (k, (u, e)) in dec.u1.components().iter().zip(eta.components()).enumerate() {
        r[0] = r[0].max((u - c(0.0, e / 3.0)).norm());
        let f3k = f3.form.components()[k][(0, 0)];
        r[1] = r[1].max((f3k - c(0.0, -2.0 * e / 3.0)).norm());
    }
    let star = HodgeStar::new(&crate::geometry::metric_closed(x, 1.0))?;
    let s = star.apply(&dec.su2);
    for (a, b) in s.components().iter().zip(dec.su2.components()) {
        r[2] = r[2].max(max_abs(&(a + b)));
        r[3] = r[3].max(b.trace().norm());
    }
    Ok(r)
}

/// Which field a dump refers to.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Component {
    A,
    F,
}

impl std::str::FromStr for Component {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "A" | "a" => Ok(Component::A),
            "F" | "f" => Ok(Component::F),
            _ => Err(Error::Parse(format!("component must be A or F, got {s:?}"))),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lie_algebra::Spin;
    use crate::parametrization::Manifold;

    fn all_blocks() -> Vec<(System, Level)> {
        let mut out = vec![];
        for twice in 1..=5 {
            let spin = Spin::from_twice(twice).unwrap();
            for sys in [System::Su2Linear { spin }, System::Su2Quadratic { spin }] {
                for l in sys.levels() {
                    out.push((sys, l));
                }
            }
        }
        for sys in [System::Su3Degenerate, System::DEFAULT_NONDEGENERATE, System::Su3Adjoint] {
            for l in sys.levels() {
                out.push((sys, l));
            }
        }
        out
    }

    fn sample(manifold: Manifold) -> Vec<f64> {
        match manifold {
            Manifold::S2 => vec![0.7, 1.3],
            Manifold::CP2 => vec![1.1, 0.4, 2.3, 1.9],
            Manifold::FLAG => vec![1.1, 0.4, 2.3, 1.9, 0.8, 2.2],
        }
    }

    #[test]
    fn closed_matches_numeric_everywhere() {
        for (sys, l) in all_blocks() {
            let ev = FieldEvaluator::new(sys, l).unwrap();
            let x = sample(sys.manifold());
            let an = ev.connection_at(&x, FieldSource::Numeric).unwrap();
            let ac = ev.connection_at(&x, FieldSource::Closed).unwrap();
            assert!(an.max_abs_diff(&ac) < 1e-8, "A {sys} {l}: {}", an.max_abs_diff(&ac));
            let fnum = ev.curvature_at(&x, FieldSource::Numeric).unwrap();
            let fc = ev.curvature_at(&x, FieldSource::Closed).unwrap();
            assert!(fnum.max_abs_diff(&fc) < 1e-6, "F {sys} {l}: {}", fnum.max_abs_diff(&fc));
            assert!(ac.anti_hermitian_residual() < 1e-14);
        }
    }

    #[test]
    fn published_variants_disagree_with_oracle() {
        let x = [1.1, 0.4, 2.3, 1.9];
        for note in notes::transcription_notes() {
            let Some(p) = notes::published_variant(&note, &x) else {
                continue;
            };
            let c = notes::corrected_variant(&note, &x).unwrap();
            assert!(max_abs_diff(&p, &c) > 1e-2, "{}", note.id);
        }
    }

    #[test]
    fn decomposition_matches_kahler_form() {
        let r = decomposition_residuals(&[1.1, 0.4, 2.3, 1.9]).unwrap();
        assert!(r.iter().all(|v| *v < 1e-12), "{r:?}");
    }

    #[test]
    fn spin_half_pair_is_flat() {
        let ev = FieldEvaluator::new(
            System::Su2Quadratic {
                spin: Spin::new(0.5).unwrap(),
            },
            Level::Pair { twice_m: 1 },
        )
        .unwrap();
        let f = ev.curvature_at(&[0.9, 2.0], FieldSource::Numeric).unwrap();
        assert!(max_abs(&f.form.components()[0]) < 1e-7);
    }

    #[test]
    fn step_validation() {
        let ev = FieldEvaluator::new(System::Su3Degenerate, Level::E1).unwrap();
        assert!(ev.with_steps(FdSteps { inner: 1e-9, outer: 1e-4 }).is_err());
    }
}
