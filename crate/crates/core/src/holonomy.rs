//! Path-ordered Wilson loops of the adiabatic connections.
//!
//! A transported state ψ(t) = Σ_j |j(x(t))⟩ c_j obeys ċ = −A(ẋ) c, so the
//! holonomy reported in the basis at the base point is
//! W = G · P exp(−∮A), where G = ⟨i(x(0))|j(x(1))⟩ accounts for loops that
//! wrap a periodic chart angle on which the frame is not single valued.
//! This is what an adiabatic evolution measures and gives arg W = −mΩ on S².

use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::gauge_field::{FieldEvaluator, FieldSource};
use crate::lie_algebra::Spin;
use crate::linalg::{dagger, expm_anti_hermitian, identity, operator_norm, unitarity_residual, CMat, MatrixParts, C64};
use crate::parametrization::{Level, Manifold, System};

pub const MIN_SEGMENTS: usize = 64;
pub const DEFAULT_SEGMENTS: usize = 1024;
pub const MAX_ADAPTIVE_SEGMENTS: usize = 1 << 16;
/// Largest allowed ‖A·Δx‖ on one segment.
pub const MAX_SEGMENT_NORM: f64 = 0.1;
/// Largest allowed change of W under doubling of the segment count.
pub const DOUBLING_TOLERANCE: f64 = 1e-6;
pub const DEFAULT_MESH_BOUND: f64 = 0.25;

fn default_mesh_bound() -> f64 {
    DEFAULT_MESH_BOUND
}

/// A closed curve in chart coordinates, parameterized by t ∈ [0, 1].
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "shape", rename_all = "kebab-case")]
pub enum LoopShape {
    /// θ = θ₀ on S², φ from 0 to 2π.
    Latitude { theta0: f64 },
    /// Circle of angular radius `radius` around the direction `center` =
    /// (θ, φ) on S², counter-clockwise seen from outside.
    Circle { center: [f64; 2], radius: f64 },
    /// One full period of a periodic coordinate, others held at `base`.
    CoordinateCircle {
        manifold: Manifold,
        axis: usize,
        base: Vec<f64>,
    },
    /// Ellipse in the plane of two coordinates:
    /// x = center + r₀ cos(2πt) e_{a₀} + r₁ sin(2πt) e_{a₁}.
    PlaneLoop {
        manifold: Manifold,
        axes: [usize; 2],
        center: Vec<f64>,
        radii: [f64; 2],
    },
    /// Piecewise-linear through explicit samples; the last sample must equal
    /// the first up to whole periods of periodic coordinates.
    Samples {
        manifold: Manifold,
        points: Vec<Vec<f64>>,
        #[serde(default = "default_mesh_bound")]
        mesh_bound: f64,
    },
}

/// A loop together with its traversal direction. This is the JSON loop
/// file format.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LoopPath {
    #[serde(flatten)]
    pub shape: LoopShape,
    #[serde(default)]
    pub reversed: bool,
}

fn unit_vector(theta: f64, phi: f64) -> [f64; 3] {
    [theta.sin() * phi.cos(), theta.sin() * phi.sin(), theta.cos()]
}

fn cross(a: [f64; 3], b: [f64; 3]) -> [f64; 3] {
    [a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2], a[0] * b[1] - a[1] * b[0]]
}

fn dot(a: [f64; 3], b: [f64; 3]) -> f64 {
    a[0] * b[0] + a[1] * b[1] + a[2] * b[2]
}

impl LoopPath {
    pub fn new(shape: LoopShape) -> Result<Self> {
        let p = Self { shape, reversed: false };
        p.validate()?;
        Ok(p)
    }

    pub fn latitude(theta0: f64) -> Result<Self> {
        Self::new(LoopShape::Latitude { theta0 })
    }

    pub fn reversed(&self) -> Self {
        Self {
            shape: self.shape.clone(),
            reversed: !self.reversed,
        }
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let p: Self = serde_json::from_str(text)?;
        p.validate()?;
        Ok(p)
    }

    pub fn manifold(&self) -> Manifold {
        match &self.shape {
            LoopShape::Latitude { .. } | LoopShape::Circle { .. } => Manifold::S2,
            LoopShape::CoordinateCircle { manifold, .. }
            | LoopShape::PlaneLoop { manifold, .. }
            | LoopShape::Samples { manifold, .. } => *manifold,
        }
    }

    pub fn validate(&self) -> Result<()> {
        let manifold = self.manifold();
        let dim = manifold.dim();
        let check_len = |v: &[f64]| {
            if v.len() != dim {
                return Err(Error::AngleCount {
                    expected: dim,
                    found: v.len(),
                });
            }
            Ok(())
        };
        match &self.shape {
            LoopShape::Latitude { theta0 } => {
                if !(0.0..=PI).contains(theta0) {
                    return Err(Error::AngleOutOfRange {
                        name: "theta0",
                        value: *theta0,
                        range: "[0, π]".into(),
                    });
                }
            }
            LoopShape::Circle { center, radius } => {
                if !(0.0..=PI).contains(&center[0]) {
                    return Err(Error::AngleOutOfRange {
                        name: "center theta",
                        value: center[0],
                        range: "[0, π]".into(),
                    });
                }
                if !(0.0..PI).contains(radius) {
                    return Err(Error::AngleOutOfRange {
                        name: "radius",
                        value: *radius,
                        range: "[0, π)".into(),
                    });
                }
            }
            LoopShape::CoordinateCircle { axis, base, .. } => {
                check_len(base)?;
                let ax = manifold.axes().get(*axis).ok_or(Error::AngleCount {
                    expected: dim,
                    found: *axis + 1,
                })?;
                if !ax.periodic {
                    return Err(Error::Unsupported(format!("coordinate {} is not periodic", ax.name)));
                }
            }
            LoopShape::PlaneLoop { axes, center, .. } => {
                check_len(center)?;
                if axes[0] >= dim || axes[1] >= dim || axes[0] == axes[1] {
                    return Err(Error::Unsupported(format!("invalid plane axes {axes:?}")));
                }
            }
            LoopShape::Samples {
                points, mesh_bound, ..
            } => {
                if points.len() < 2 {
                    return Err(Error::OpenLoop(f64::INFINITY));
                }
                for p in points {
                    check_len(p)?;
                }
                for w in points.windows(2) {
                    let d = w[0].iter().zip(&w[1]).map(|(a, b)| (a - b).abs()).fold(0.0, f64::max);
                    if d > *mesh_bound {
                        return Err(Error::CoarseMesh(d));
                    }
                }
                let gap = self.closure_gap();
                if gap > 1e-9 {
                    return Err(Error::OpenLoop(gap));
                }
            }
        }
        Ok(())
    }

    /// Distance between end and start after removing whole periods.
    pub fn closure_gap(&self) -> f64 {
        let shift = self.forward_point(1.0)
            .iter()
            .zip(self.forward_point(0.0))
            .map(|(a, b)| a - b)
            .collect::<Vec<_>>();
        shift
            .iter()
            .zip(self.manifold().axes())
            .map(|(d, ax)| {
                if ax.periodic {
                    let p = ax.period();
                    (d - (d / p).round() * p).abs()
                } else {
                    d.abs()
                }
            })
            .fold(0.0, f64::max)
    }

    fn forward_point(&self, t: f64) -> Vec<f64> {
        let tau = 2.0 * PI * t;
        match &self.shape {
            LoopShape::Latitude { theta0 } => vec![*theta0, tau],
            LoopShape::Circle { center, radius } => {
                let n = unit_vector(center[0], center[1]);
                let e1 = unit_vector(center[0] + PI / 2.0, center[1]);
                let e2 = cross(n, e1);
                let (s, c) = (radius.sin(), radius.cos());
                let v: Vec<f64> = (0..3)
                    .map(|k| c * n[k] + s * (tau.cos() * e1[k] + tau.sin() * e2[k]))
                    .collect();
                let theta = v[2].clamp(-1.0, 1.0).acos();
                // Unwrap φ continuously from its value at t = 0.
                let phi0 = {
                    let v0: Vec<f64> = (0..3).map(|k| c * n[k] + s * e1[k]).collect();
                    v0[1].atan2(v0[0])
                };
                let winds = dot([0.0, 0.0, 1.0], n) > c;
                let raw = v[1].atan2(v[0]);
                let mut phi = raw;
                if winds {
                    phi = raw + 2.0 * PI * ((phi0 + tau - raw) / (2.0 * PI)).round();
                } else {
                    phi += 2.0 * PI * ((phi0 - raw) / (2.0 * PI)).round();
                }
                vec![theta, phi]
            }
            LoopShape::CoordinateCircle { manifold, axis, base } => {
                let mut x = base.clone();
                x[*axis] += manifold.axes()[*axis].period() * t;
                x
            }
            LoopShape::PlaneLoop { axes, center, radii, .. } => {
                let mut x = center.clone();
                x[axes[0]] += radii[0] * tau.cos();
                x[axes[1]] += radii[1] * tau.sin();
                x
            }
            LoopShape::Samples { points, .. } => {
                let segs = (points.len() - 1) as f64;
                let u = (t * segs).clamp(0.0, segs);
                let k = (u.floor() as usize).min(points.len() - 2);
                let f = u - k as f64;
                points[k].iter().zip(&points[k + 1]).map(|(a, b)| a + f * (b - a)).collect()
            }
        }
    }

    /// Unwrapped chart coordinates at parameter t. A reversed loop starts at
    /// the same base point and runs backwards.
    pub fn point(&self, t: f64) -> Vec<f64> {
        if !self.reversed {
            return self.forward_point(t);
        }
        let end = self.forward_point(1.0);
        let start = self.forward_point(0.0);
        self.forward_point(1.0 - t)
            .iter()
            .zip(end.iter().zip(&start))
            .map(|(x, (e, s))| x - (e - s))
            .collect()
    }
}

/// The result of a Wilson-loop computation.
#[derive(Debug, Clone)]
pub struct Holonomy {
    pub system: System,
    pub level: Level,
    pub w: CMat,
    pub segments: usize,
    /// ‖W(2N) − W(N)‖ in operator norm.
    pub doubling_error: f64,
    pub max_segment_norm: f64,
    /// For rank-1 levels, the unwrapped line integral −∮ Im A in the chart
    /// gauge plus the principal phase of the closure factor G. Agrees with
    /// the wrapped phase modulo 2π and tracks winding along the loop.
    pub continuous_phase: Option<f64>,
}

impl Holonomy {
    pub fn dim(&self) -> usize {
        self.w.nrows()
    }

    pub fn trace(&self) -> C64 {
        self.w.trace()
    }

    pub fn unitarity_residual(&self) -> f64 {
        unitarity_residual(&self.w)
    }

    /// arg W in (−π, π] for rank-1 levels.
    pub fn abelian_phase(&self) -> Option<f64> {
        (self.dim() == 1).then(|| self.w[(0, 0)].arg())
    }

    pub fn summary(&self) -> HolonomySummary {
        HolonomySummary {
            system: self.system,
            level: self.level,
            w: MatrixParts::from(&self.w),
            trace: [self.trace().re, self.trace().im],
            abelian_phase: self.abelian_phase(),
            continuous_phase: self.continuous_phase,
            segments: self.segments,
            order: 2,
            doubling_error: self.doubling_error,
            unitarity_residual: self.unitarity_residual(),
        }
    }
}

/// JSON form of a [`Holonomy`].
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct HolonomySummary {
    pub system: System,
    pub level: Level,
    pub w: MatrixParts,
    pub trace: [f64; 2],
    pub abelian_phase: Option<f64>,
    pub continuous_phase: Option<f64>,
    pub segments: usize,
    pub order: u32,
    pub doubling_error: f64,
    pub unitarity_residual: f64,
}

/// P exp(−∮A) by the midpoint exponential product, later segments on the
/// left. Returns the product, the largest ‖A·Δx‖ and ∮ Im tr(A·dx) for
/// rank-1 connections.
pub fn path_ordered_exponential<F>(connection: F, path: &LoopPath, segments: usize) -> Result<(CMat, f64, f64)>
where
    F: Fn(&[f64]) -> Result<Vec<CMat>>,
{
    if segments < MIN_SEGMENTS {
        return Err(Error::TooFewSegments(segments));
    }
    let mut u: Option<CMat> = None;
    let mut max_norm = 0.0_f64;
    let mut phase = 0.0;
    let n = segments as f64;
    let mut prev = path.point(0.0);
    for k in 0..segments {
        let next = path.point((k + 1) as f64 / n);
        let mid = path.point((k as f64 + 0.5) / n);
        let a = connection(&mid)?;
        let d = a[0].nrows();
        let mut step = CMat::zeros(d, d);
        for (am, (xn, xp)) in a.iter().zip(next.iter().zip(&prev)) {
            step += am * C64::new(xn - xp, 0.0);
        }
        max_norm = max_norm.max(operator_norm(&step));
        if d == 1 {
            phase -= step[(0, 0)].im;
        }
        let e = expm_anti_hermitian(&(-step));
        u = Some(match u {
            None => e,
            Some(acc) => e * acc,
        });
        prev = next;
    }
    if max_norm > MAX_SEGMENT_NORM {
        return Err(Error::SegmentTooLong(max_norm));
    }
    Ok((u.expect("at least one segment"), max_norm, phase))
}

/// W = G · P exp(−∮A) for the level of `ev` around `path`, with a
/// doubling convergence check. The returned W is the 2N estimate.
pub fn wilson_loop(ev: &FieldEvaluator, path: &LoopPath, segments: usize, source: FieldSource) -> Result<Holonomy> {
    let expected = ev.system().manifold();
    if path.manifold() != expected {
        return Err(Error::ManifoldMismatch {
            expected,
            found: path.manifold(),
        });
    }
    let conn = |x: &[f64]| ev.connection_at(x, source).map(|a| a.components);
    let (w1, _, _) = path_ordered_exponential(conn, path, segments)?;
    let (w2, max_norm, phase) = path_ordered_exponential(conn, path, 2 * segments)?;
    let g = dagger(&ev.eigenframe(&path.point(0.0))) * ev.eigenframe(&path.point(1.0));
    let doubling_error = operator_norm(&(&g * (&w2 - &w1)));
    if doubling_error > DOUBLING_TOLERANCE {
        return Err(Error::NotConverged(doubling_error));
    }
    let closure_phase = if g.nrows() == 1 { Some(g[(0, 0)].arg()) } else { None };
    Ok(Holonomy {
        system: ev.system(),
        level: ev.level(),
        w: &g * w2,
        segments: 2 * segments,
        doubling_error,
        max_segment_norm: max_norm,
        continuous_phase: closure_phase.map(|p| p + phase),
    })
}

/// [`wilson_loop`] starting at `segments` and doubling the count until the
/// convergence and segment-length checks pass, up to `max_segments`.
pub fn wilson_loop_adaptive(
    ev: &FieldEvaluator,
    path: &LoopPath,
    segments: usize,
    max_segments: usize,
    source: FieldSource,
) -> Result<Holonomy> {
    let mut n = segments.max(MIN_SEGMENTS);
    loop {
        match wilson_loop(ev, path, n, source) {
            Err(Error::NotConverged(_) | Error::SegmentTooLong(_)) if 2 * n <= max_segments => n *= 2,
            other => return other,
        }
    }
}

/// Oriented solid angle enclosed by a loop on S², summed from signed
/// spherical triangles with apex at the north pole. `samples` sets the
/// polygonal resolution.
pub fn solid_angle(path: &LoopPath, samples: usize) -> Result<f64> {
    if path.manifold() != Manifold::S2 {
        return Err(Error::ManifoldMismatch {
            expected: Manifold::S2,
            found: path.manifold(),
        });
    }
    let pole = [0.0, 0.0, 1.0];
    let vec_at = |t: f64| {
        let x = path.point(t);
        unit_vector(x[0], x[1])
    };
    let mut total = 0.0;
    let mut a = vec_at(0.0);
    for k in 1..=samples {
        let b = vec_at(k as f64 / samples as f64);
        let num = dot(pole, cross(a, b));
        let den = 1.0 + dot(pole, a) + dot(a, b) + dot(b, pole);
        if num.hypot(den) < 1e-12 {
            return Err(Error::IllConditioned(num.hypot(den)));
        }
        total += 2.0 * num.atan2(den);
        a = b;
    }
    Ok(total)
}

/// Maps a phase into (−π, π].
pub fn wrap_phase(p: f64) -> f64 {
    let w = p.rem_euclid(2.0 * PI);
    if w > PI {
        w - 2.0 * PI
    } else {
        w
    }
}

/// arg of the Wilson loop of level m of the linear spin-j system.
pub fn berry_phase_su2(spin: Spin, twice_m: i32, path: &LoopPath, segments: usize) -> Result<f64> {
    let ev = FieldEvaluator::new(System::Su2Linear { spin }, Level::Projection { twice_m })?;
    let h = wilson_loop(&ev, path, segments, FieldSource::Closed)?;
    Ok(h.abelian_phase().expect("rank-1 level"))
}

/// The identity holonomy of a point loop, for callers that need a neutral
/// element of the right size.
pub fn trivial_holonomy(ev: &FieldEvaluator) -> CMat {
    identity(ev.dim())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::{max_abs_diff, HermitianExp};

    fn su2(twice_j: u32, twice_m: i32) -> FieldEvaluator {
        FieldEvaluator::new(
            System::Su2Linear {
                spin: Spin::from_twice(twice_j).unwrap(),
            },
            Level::Projection { twice_m },
        )
        .unwrap()
    }

    #[test]
    fn latitude_phase_follows_solid_angle() {
        for theta0 in [0.3, 0.9, PI / 2.0, 2.0, 2.8] {
            let path = LoopPath::latitude(theta0).unwrap();
            let omega = solid_angle(&path, 20000).unwrap();
            assert!((omega - 2.0 * PI * (1.0 - theta0.cos())).abs() < 1e-7);
            let omega = 2.0 * PI * (1.0 - theta0.cos());
            for (tj, tm) in [(1, 1), (1, -1), (2, 2), (3, 3), (5, -3)] {
                let h = wilson_loop(&su2(tj, tm), &path, 128, FieldSource::Closed).unwrap();
                let want = wrap_phase(-(tm as f64) / 2.0 * omega);
                let got = h.abelian_phase().unwrap();
                assert!(wrap_phase(got - want).abs() < 1e-9, "θ={theta0} m={tm}/2: {got} vs {want}");
            }
        }
    }

    #[test]
    fn tilted_circle_phase_and_area() {
        for (center, radius) in [([0.7, 0.4], 0.5), ([1.9, 2.0], 1.1), ([0.2, 1.0], 0.6)] {
            let path = LoopPath::new(LoopShape::Circle { center, radius }).unwrap();
            let omega = solid_angle(&path, 20000).unwrap();
            let cap = 2.0 * PI * (1.0 - radius.cos());
            assert!(wrap_phase(omega - cap).abs() < 1e-6, "{omega} vs {cap}");
            let h = wilson_loop(&su2(1, 1), &path, 2048, FieldSource::Closed).unwrap();
            assert!(wrap_phase(h.abelian_phase().unwrap() + 0.5 * cap).abs() < 1e-6);
        }
    }

    #[test]
    fn reversal_inverts() {
        let ev = FieldEvaluator::new(System::Su3Degenerate, Level::E1).unwrap();
        let path = LoopPath::new(LoopShape::PlaneLoop {
            manifold: Manifold::CP2,
            axes: [0, 3],
            center: vec![1.2, 0.3, 0.8, 1.5],
            radii: [0.5, 0.7],
        })
        .unwrap();
        let w = wilson_loop(&ev, &path, 512, FieldSource::Closed).unwrap();
        let wr = wilson_loop(&ev, &path.reversed(), 512, FieldSource::Closed).unwrap();
        assert!(max_abs_diff(&wr.w, &w.w.adjoint()) < 1e-7);
        assert!(w.unitarity_residual() < 1e-12);
        assert!(crate::linalg::off_diagonal_residual(&w.w) > 1e-3, "expected a non-Abelian holonomy");
    }

    #[test]
    fn gauge_rotation_conjugates() {
        let ev = FieldEvaluator::new(System::Su3Degenerate, Level::E1).unwrap();
        let path = LoopPath::new(LoopShape::PlaneLoop {
            manifold: Manifold::CP2,
            axes: [1, 3],
            center: vec![1.0, 0.5, 0.5, 1.2],
            radii: [0.8, 0.4],
        })
        .unwrap();
        let [sx, _, sz] = crate::linalg::pauli();
        let u = HermitianExp::new(&(sx * C64::new(0.4, 0.0) + sz * C64::new(0.9, 0.0))).exp_i(1.0);
        let w = wilson_loop(&ev, &path, 512, FieldSource::Closed).unwrap().w;
        let ud = u.adjoint();
        let rotated = |x: &[f64]| {
            ev.connection_at(x, FieldSource::Closed)
                .map(|a| a.components.iter().map(|m| &ud * m * &u).collect())
        };
        let (p, _, _) = path_ordered_exponential(rotated, &path, 1024).unwrap();
        let w_rot = &ud * ev.eigenframe(&path.point(0.0)).adjoint() * ev.eigenframe(&path.point(1.0)) * &u * p;
        assert!(max_abs_diff(&w_rot, &(&ud * &w * &u)) < 1e-9);
        assert!((w_rot.trace() - w.trace()).norm() < 1e-9);
    }

    #[test]
    fn point_loop_is_identity() {
        let ev = FieldEvaluator::new(System::Su3Adjoint, Level::Zero).unwrap();
        let path = LoopPath::new(LoopShape::PlaneLoop {
            manifold: Manifold::CP2,
            axes: [0, 1],
            center: vec![1.0, 0.5, 0.5, 1.2],
            radii: [0.0, 0.0],
        })
        .unwrap();
        let h = wilson_loop(&ev, &path, 64, FieldSource::Closed).unwrap();
        assert!(max_abs_diff(&h.w, &identity(4)) < 1e-14);
        assert!(solid_angle(&LoopPath::latitude(0.0).unwrap(), 100).unwrap().abs() < 1e-14);
    }

    #[test]
    fn abelian_phase_matches_line_integral() {
        let ev = FieldEvaluator::new(System::Su3Degenerate, Level::E3).unwrap();
        let path = LoopPath::new(LoopShape::CoordinateCircle {
            manifold: Manifold::CP2,
            axis: 1,
            base: vec![0.9, 0.0, 0.3, 2.0],
        })
        .unwrap();
        let h = wilson_loop(&ev, &path, 256, FieldSource::Closed).unwrap();
        let cont = h.continuous_phase.unwrap();
        assert!(wrap_phase(cont - h.abelian_phase().unwrap()).abs() < 1e-7);
    }

    #[test]
    fn rejects_bad_loops() {
        let open = LoopShape::Samples {
            manifold: Manifold::S2,
            points: vec![vec![0.5, 0.0], vec![0.6, 0.1]],
            mesh_bound: 0.25,
        };
        assert!(matches!(LoopPath::new(open), Err(Error::OpenLoop(_))));
        let coarse = LoopShape::Samples {
            manifold: Manifold::S2,
            points: vec![vec![0.5, 0.0], vec![0.5, PI], vec![0.5, 2.0 * PI]],
            mesh_bound: 0.25,
        };
        assert!(matches!(LoopPath::new(coarse), Err(Error::CoarseMesh(_))));
        let path = LoopPath::latitude(1.0).unwrap();
        assert!(matches!(
            wilson_loop(&su2(1, 1), &path, 16, FieldSource::Closed),
            Err(Error::TooFewSegments(16))
        ));
        let ev = FieldEvaluator::new(System::Su3Degenerate, Level::E1).unwrap();
        assert!(matches!(
            wilson_loop(&ev, &path, 64, FieldSource::Closed),
            Err(Error::ManifoldMismatch { .. })
        ));
    }

    #[test]
    fn loop_json_roundtrip() {
        let text = r#"{"shape":"plane-loop","manifold":"CP2","axes":[0,3],"center":[1,0.5,0.5,1.2],"radii":[0.3,0.3]}"#;
        let p = LoopPath::from_json(text).unwrap();
        assert_eq!(p.manifold(), Manifold::CP2);
        let back: LoopPath = serde_json::from_str(&serde_json::to_string(&p).unwrap()).unwrap();
        assert_eq!(back, p);
    }
}
