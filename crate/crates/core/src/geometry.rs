//! Riemannian and Kähler structure of CP² in the chart (β, α, γ, θ).
//!
//! The metric is induced from the embedding ξ: CP² → ℝ⁸, so it scales with
//! R². The Kähler form and everything built on it live on the unit-radius
//! CP²; only the angles of a point are used there.

use std::f64::consts::PI;

use nalgebra::Matrix4;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::lie_algebra::StructureConstants;
use crate::linalg::{CMat, C64};
use crate::parametrization::{embedding_closed, Manifold, ParamPoint};
use crate::quadrature::{Accumulate, Rule1D, TensorGrid};

/// Values a differential form may carry: real or complex scalars, or
/// matrices.
pub trait FormValue: Clone {
    fn zero_like(&self) -> Self;
    fn add_scaled(&mut self, s: f64, other: &Self);
    fn product(&self, other: &Self) -> Self;
}

impl FormValue for f64 {
    fn zero_like(&self) -> Self {
        0.0
    }
    fn add_scaled(&mut self, s: f64, other: &Self) {
        *self += s * other;
    }
    fn product(&self, other: &Self) -> Self {
        self * other
    }
}

impl FormValue for C64 {
    fn zero_like(&self) -> Self {
        C64::new(0.0, 0.0)
    }
    fn add_scaled(&mut self, s: f64, other: &Self) {
        *self += other * s;
    }
    fn product(&self, other: &Self) -> Self {
        self * other
    }
}

impl FormValue for CMat {
    fn zero_like(&self) -> Self {
        CMat::zeros(self.nrows(), self.ncols())
    }
    fn add_scaled(&mut self, s: f64, other: &Self) {
        for (a, b) in self.iter_mut().zip(other.iter()) {
            *a += b * s;
        }
    }
    fn product(&self, other: &Self) -> Self {
        self * other
    }
}

/// Index of the pair (m, n), m < n, in the lexicographic list
/// (0,1), (0,2), …, (0,d−1), (1,2), ….
pub fn pair_index(dim: usize, m: usize, n: usize) -> usize {
    debug_assert!(m < n && n < dim);
    m * dim - m * (m + 1) / 2 + (n - m - 1)
}

/// All pairs m < n in storage order.
pub fn pairs(dim: usize) -> Vec<(usize, usize)> {
    let mut out = Vec::with_capacity(dim * (dim - 1) / 2);
    for m in 0..dim {
        for n in (m + 1)..dim {
            out.push((m, n));
        }
    }
    out
}

/// An antisymmetric two-form ω = ½ ω_mn dxᵐ∧dxⁿ, storing only m < n.
#[derive(Debug, Clone, PartialEq)]
pub struct TwoForm<T> {
    dim: usize,
    comps: Vec<T>,
}

impl<T: FormValue> TwoForm<T> {
    /// Builds a form from its upper-triangle components in [`pairs`] order.
    pub fn from_components(dim: usize, comps: Vec<T>) -> Self {
        assert_eq!(comps.len(), dim * (dim - 1) / 2, "component count");
        Self { dim, comps }
    }

    pub fn from_fn(dim: usize, mut f: impl FnMut(usize, usize) -> T) -> Self {
        let comps = pairs(dim).into_iter().map(|(m, n)| f(m, n)).collect();
        Self { dim, comps }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn components(&self) -> &[T] {
        &self.comps
    }

    /// ω_mn with ω_nm = −ω_mn and ω_mm = 0.
    pub fn get(&self, m: usize, n: usize) -> T {
        use std::cmp::Ordering::*;
        match m.cmp(&n) {
            Less => self.comps[pair_index(self.dim, m, n)].clone(),
            Greater => {
                let v = &self.comps[pair_index(self.dim, n, m)];
                let mut z = v.zero_like();
                z.add_scaled(-1.0, v);
                z
            }
            Equal => self.comps[0].zero_like(),
        }
    }

    pub fn map<U: FormValue>(&self, f: impl Fn(&T) -> U) -> TwoForm<U> {
        TwoForm {
            dim: self.dim,
            comps: self.comps.iter().map(f).collect(),
        }
    }

    pub fn zip_map<U: FormValue>(&self, other: &Self, f: impl Fn(&T, &T) -> U) -> TwoForm<U> {
        assert_eq!(self.dim, other.dim);
        TwoForm {
            dim: self.dim,
            comps: self
                .comps
                .iter()
                .zip(&other.comps)
                .map(|(a, b)| f(a, b))
                .collect(),
        }
    }
}

/// Coefficient of dx¹∧dx²∧dx³∧dx⁴ in ω₁∧ω₂. For matrix values the
/// products keep ω₁ on the left.
pub fn wedge_4form<T: FormValue>(a: &TwoForm<T>, b: &TwoForm<T>) -> T {
    assert!(a.dim == 4 && b.dim == 4, "wedge_4form needs 4D forms");
    let terms: [(usize, usize, f64); 6] = [
        (0, 5, 1.0),  // 12 ∧ 34
        (1, 4, -1.0), // 13 ∧ 24
        (2, 3, 1.0),  // 14 ∧ 23
        (3, 2, 1.0),  // 23 ∧ 14
        (4, 1, -1.0), // 24 ∧ 13
        (5, 0, 1.0),  // 34 ∧ 12
    ];
    let mut acc = a.comps[0].product(&b.comps[0]).zero_like();
    for (i, j, s) in terms {
        acc.add_scaled(s, &a.comps[i].product(&b.comps[j]));
    }
    acc
}

/// det g below which the chart is treated as degenerate. Gauss nodes of a
/// 64-point rule reach det g ≈ 1e-26 on the unit CP².
pub const MIN_METRIC_DET: f64 = 1e-60;

/// Metric tensor in the chart (β, α, γ, θ).
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Metric4 {
    pub g: [[f64; 4]; 4],
}

impl Metric4 {
    fn matrix(&self) -> Matrix4<f64> {
        Matrix4::from_fn(|i, j| self.g[i][j])
    }

    pub fn det(&self) -> f64 {
        self.matrix().determinant()
    }

    pub fn inverse(&self) -> Result<[[f64; 4]; 4]> {
        let det = self.det();
        if det.abs() < MIN_METRIC_DET {
            return Err(Error::ChartBoundary(det));
        }
        let inv = self.matrix().try_inverse().ok_or(Error::ChartBoundary(det))?;
        let mut out = [[0.0; 4]; 4];
        for (i, row) in out.iter_mut().enumerate() {
            for (j, v) in row.iter_mut().enumerate() {
                *v = inv[(i, j)];
            }
        }
        Ok(out)
    }

    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        let mut worst = 0.0_f64;
        for i in 0..4 {
            for j in 0..4 {
                worst = worst.max((self.g[i][j] - other.g[i][j]).abs());
            }
        }
        worst
    }
}

/// Closed-form induced metric at raw coordinates and radius R.
pub fn metric_closed(x: &[f64], radius: f64) -> Metric4 {
    let (b, t) = (x[0], x[3]);
    let r2 = radius * radius;
    let st2 = t.sin().powi(2);
    let g22 = 3.0 / 16.0 * st2 * b.cos().powi(2) + 3.0 / 8.0 * b.sin().powi(2) * (1.0 - t.cos());
    let g23 = 3.0 / 16.0 * b.cos() * st2;
    let mut g = [[0.0; 4]; 4];
    g[0][0] = 0.75 * (t / 2.0).sin().powi(2);
    g[1][1] = g22;
    g[1][2] = g23;
    g[2][1] = g23;
    g[2][2] = 3.0 / 16.0 * st2;
    g[3][3] = 0.75;
    for row in g.iter_mut() {
        for v in row.iter_mut() {
            *v *= r2;
        }
    }
    Metric4 { g }
}

/// √det g = (9/32) sin²(θ/2) sinθ sinβ at unit radius; scales as R⁴.
pub fn sqrt_det_closed(x: &[f64], radius: f64) -> f64 {
    9.0 / 32.0 * (x[3] / 2.0).sin().powi(2) * x[3].sin() * x[0].sin() * radius.powi(4)
}

fn require_cp2(point: &ParamPoint) -> Result<()> {
    if point.manifold() != Manifold::CP2 {
        return Err(Error::ManifoldMismatch {
            expected: Manifold::CP2,
            found: point.manifold(),
        });
    }
    Ok(())
}

/// Induced metric at a CP² point.
pub fn metric_at(point: &ParamPoint) -> Result<Metric4> {
    require_cp2(point)?;
    Ok(metric_closed(point.angles(), point.radius()))
}

/// Jacobian ∂ξⁱ/∂xᵐ by central differences of the closed-form embedding.
pub fn embedding_jacobian(x: &[f64], radius: f64, h: f64) -> [[f64; 4]; 8] {
    let mut j = [[0.0; 4]; 8];
    for m in 0..4 {
        let mut xp = x.to_vec();
        let mut xm = x.to_vec();
        xp[m] += h;
        xm[m] -= h;
        let a = embedding_closed(&xp, radius);
        let b = embedding_closed(&xm, radius);
        for i in 0..8 {
            j[i][m] = (a[i] - b[i]) / (2.0 * h);
        }
    }
    j
}

/// Metric as the pullback JᵀJ of the flat ℝ⁸ metric.
pub fn metric_pullback(point: &ParamPoint, h: f64) -> Result<Metric4> {
    require_cp2(point)?;
    let j = embedding_jacobian(point.angles(), point.radius(), h);
    let mut g = [[0.0; 4]; 4];
    for (m, row) in g.iter_mut().enumerate() {
        for (n, v) in row.iter_mut().enumerate() {
            *v = (0..8).map(|i| j[i][m] * j[i][n]).sum();
        }
    }
    Ok(Metric4 { g })
}

/// Kähler form η on the unit CP²: η₁₂ = ¾ sinβ sin²(θ/2),
/// η₂₄ = ⅜ cosβ sinθ, η₃₄ = ⅜ sinθ, other components zero.
pub fn kahler_closed(x: &[f64]) -> TwoForm<f64> {
    let (b, t) = (x[0], x[3]);
    TwoForm::from_components(
        4,
        vec![
            0.75 * b.sin() * (t / 2.0).sin().powi(2),
            0.0,
            0.0,
            0.0,
            0.375 * b.cos() * t.sin(),
            0.375 * t.sin(),
        ],
    )
}

pub fn kahler_form(point: &ParamPoint) -> Result<TwoForm<f64>> {
    require_cp2(point)?;
    Ok(kahler_closed(point.angles()))
}

/// η from the invariant expression (1/√3) fᵢⱼₖ ξᵢ dξⱼ∧dξₖ pulled back through
/// a finite-difference Jacobian, on the unit CP².
pub fn kahler_pullback(point: &ParamPoint, h: f64) -> Result<TwoForm<f64>> {
    require_cp2(point)?;
    let x = point.angles();
    let xi = embedding_closed(x, 1.0);
    let j = embedding_jacobian(x, 1.0, h);
    let f = StructureConstants::new();
    Ok(TwoForm::from_fn(4, |m, n| {
        let mut s = 0.0;
        for i in 0..8 {
            for jj in 0..8 {
                for k in 0..8 {
                    let fijk = f.get(i, jj, k);
                    if fijk != 0.0 {
                        s += fijk * xi[i] * j[jj][m] * j[k][n];
                    }
                }
            }
        }
        2.0 / 3f64.sqrt() * s
    }))
}

/// Hodge star on 2-forms in four dimensions, as a 6×6 real matrix acting on
/// the components (12, 13, 14, 23, 24, 34). Orientation: ε₁₂₃₄ = +1 in
/// (β, α, γ, θ).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct HodgeStar {
    pub m: [[f64; 6]; 6],
}

fn levi_civita(p: [usize; 4]) -> f64 {
    let mut s = 1.0;
    for i in 0..4 {
        for j in (i + 1)..4 {
            if p[i] == p[j] {
                return 0.0;
            }
            if p[i] > p[j] {
                s = -s;
            }
        }
    }
    s
}

impl HodgeStar {
    /// (*ω)_cd = ½ √det g ε_abcd g^ae g^bf ω_ef.
    pub fn new(metric: &Metric4) -> Result<Self> {
        let det = metric.det();
        if det <= MIN_METRIC_DET {
            return Err(Error::ChartBoundary(det));
        }
        let gi = metric.inverse()?;
        let sg = det.sqrt();
        let ps = pairs(4);
        let mut m = [[0.0; 6]; 6];
        for (row, &(c, d)) in ps.iter().enumerate() {
            for (col, &(e, f)) in ps.iter().enumerate() {
                let mut s = 0.0;
                for a in 0..4 {
                    for b in 0..4 {
                        let eps = levi_civita([a, b, c, d]);
                        if eps != 0.0 {
                            s += eps * (gi[a][e] * gi[b][f] - gi[a][f] * gi[b][e]);
                        }
                    }
                }
                m[row][col] = 0.5 * sg * s;
            }
        }
        Ok(Self { m })
    }

    pub fn apply<T: FormValue>(&self, w: &TwoForm<T>) -> TwoForm<T> {
        assert_eq!(w.dim, 4);
        let comps = (0..6)
            .map(|r| {
                let mut acc = w.comps[0].zero_like();
                for c in 0..6 {
                    if self.m[r][c] != 0.0 {
                        acc.add_scaled(self.m[r][c], &w.comps[c]);
                    }
                }
                acc
            })
            .collect();
        TwoForm { dim: 4, comps }
    }
}

/// `hodge_star(ω, g)`.
pub fn hodge_star<T: FormValue>(w: &TwoForm<T>, metric: &Metric4) -> Result<TwoForm<T>> {
    Ok(HodgeStar::new(metric)?.apply(w))
}

/// Integration grid over the full CP² chart.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum AxisRule {
    /// Gauss–Legendre on every axis.
    Gauss,
    /// Gauss–Legendre on β, θ and the periodic trapezoid rule on α, γ.
    Mixed,
}

/// Tensor grid over (β, α, γ, θ) ∈ [0,π]×[0,2π)×[0,4π)×[0,π].
pub fn cp2_grid(n: usize, rule: AxisRule) -> TensorGrid {
    let per = |n, hi| match rule {
        AxisRule::Gauss => Rule1D::gauss(n, 0.0, hi),
        AxisRule::Mixed => Rule1D::periodic(n, 0.0, hi),
    };
    TensorGrid::new(vec![
        Rule1D::gauss(n, 0.0, PI),
        per(n, 2.0 * PI),
        per(n, 4.0 * PI),
        Rule1D::gauss(n, 0.0, PI),
    ])
}

/// Grid for integrands that do not depend on α or γ: only β and θ are
/// sampled, α and γ contribute their ranges 2π·4π as a constant factor.
pub fn cp2_reduced_grid(n: usize) -> TensorGrid {
    TensorGrid::new(vec![
        Rule1D::gauss(n, 0.0, PI),
        Rule1D::periodic(1, 0.0, 2.0 * PI),
        Rule1D::periodic(1, 0.0, 4.0 * PI),
        Rule1D::gauss(n, 0.0, PI),
    ])
}

fn check_grid(n: usize, min: usize) -> Result<()> {
    if n < min {
        return Err(Error::GridTooCoarse { found: n, min });
    }
    Ok(())
}

/// ∫ f dβ dα dγ dθ over CP².
pub fn integrate_cp2<T, F>(n: usize, rule: AxisRule, f: F) -> T
where
    T: Accumulate,
    F: Fn(&[f64]) -> T + Sync,
{
    cp2_grid(n, rule).integrate(f)
}

/// Volume of the unit CP², ∫ √det g.
pub fn volume_cp2(n: usize) -> Result<f64> {
    check_grid(n, 4)?;
    Ok(integrate_cp2(n, AxisRule::Gauss, |x| sqrt_det_closed(x, 1.0)))
}

/// Monte-Carlo estimate of the volume with its one-sigma error.
pub fn volume_cp2_monte_carlo(samples: usize, seed: u64) -> (f64, f64) {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let box_volume = PI * 2.0 * PI * 4.0 * PI * PI;
    let mut sum = 0.0;
    let mut sum2 = 0.0;
    for _ in 0..samples {
        let x = [
            rng.random_range(0.0..PI),
            0.0,
            0.0,
            rng.random_range(0.0..PI),
        ];
        let v = sqrt_det_closed(&x, 1.0) * box_volume;
        sum += v;
        sum2 += v * v;
    }
    let n = samples as f64;
    let mean = sum / n;
    let var = (sum2 / n - mean * mean).max(0.0);
    (mean, (var / n).sqrt())
}

/// ⟨ω₁, ω₂⟩ = ∫ ω₁ ∧ *ω₂ over CP².
pub fn form_inner_product<F1, F2>(a: F1, b: F2, n: usize, rule: AxisRule) -> Result<C64>
where
    F1: Fn(&[f64]) -> TwoForm<C64> + Sync,
    F2: Fn(&[f64]) -> TwoForm<C64> + Sync,
{
    check_grid(n, 4)?;
    Ok(integrate_cp2(n, rule, |x| {
        let star = HodgeStar::new(&metric_closed(x, 1.0)).expect("Gauss nodes avoid the chart boundary");
        wedge_4form(&a(x), &star.apply(&b(x)))
    }))
}

/// ∫_{S²ₛ} ω₁₂ dβ dα on the chart θ = π.
pub fn south_sphere_integral<F>(form12: F, n: usize) -> Result<f64>
where
    F: Fn(f64, f64) -> f64 + Sync,
{
    check_grid(n, 8)?;
    let grid = TensorGrid::new(vec![Rule1D::gauss(n, 0.0, PI), Rule1D::periodic(n, 0.0, 2.0 * PI)]);
    Ok(grid.integrate(|x| form12(x[0], x[1])))
}

/// ∫_{S²ₛ} η/(3π) and ∫ (η/3π)∧(η/3π); both equal 1.
pub fn omega_normalization(n2: usize, n4: usize) -> Result<(f64, f64)> {
    let s = 1.0 / (3.0 * PI);
    let flux = south_sphere_integral(
        |b, a| kahler_closed(&[b, a, 0.0, PI]).get(0, 1) * s,
        n2,
    )?;
    check_grid(n4, 4)?;
    let vol4 = integrate_cp2(n4, AxisRule::Gauss, |x| {
        let w = kahler_closed(x);
        wedge_4form(&w, &w) * s * s
    });
    Ok((flux, vol4))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pt(x: [f64; 4]) -> ParamPoint {
        ParamPoint::new(Manifold::CP2, x.to_vec(), 1.0).unwrap()
    }

    #[test]
    fn pair_indexing() {
        let ps = pairs(4);
        for (k, &(m, n)) in ps.iter().enumerate() {
            assert_eq!(pair_index(4, m, n), k);
        }
        let ps6 = pairs(6);
        assert_eq!(ps6.len(), 15);
        for (k, &(m, n)) in ps6.iter().enumerate() {
            assert_eq!(pair_index(6, m, n), k);
        }
    }

    #[test]
    fn metric_special_values() {
        let g = metric_at(&pt([0.3, 0.0, 0.0, PI])).unwrap();
        assert!((g.g[0][0] - 0.75).abs() < 1e-15);
        assert_eq!(g.g[3][3], 0.75);
    }

    #[test]
    fn metric_matches_pullback() {
        let p = pt([1.1, 0.4, 2.3, 1.9]);
        let a = metric_at(&p).unwrap();
        let b = metric_pullback(&p, 1e-5).unwrap();
        assert!(a.max_abs_diff(&b) < 1e-9);
        let d = sqrt_det_closed(p.angles(), 1.0);
        assert!((a.det().sqrt() - d).abs() < 1e-13);
    }

    #[test]
    fn kahler_matches_invariant_expression() {
        let p = pt([2.0, 5.0, 9.0, 0.8]);
        let a = kahler_form(&p).unwrap();
        let b = kahler_pullback(&p, 1e-5).unwrap();
        for (x, y) in a.components().iter().zip(b.components()) {
            assert!((x - y).abs() < 1e-9);
        }
        let e = kahler_closed(&[0.0, 0.0, 0.0, PI / 2.0]);
        assert!((e.get(2, 3) - 0.375).abs() < 1e-15);
        assert_eq!(e.get(0, 2), 0.0);
        assert_eq!(e.get(3, 2), -e.get(2, 3));
    }

    #[test]
    fn eta_is_self_dual_and_volume_form() {
        let x = [1.1, 0.4, 2.3, 1.9];
        let g = metric_closed(&x, 1.0);
        let eta = kahler_closed(&x);
        let star = hodge_star(&eta, &g).unwrap();
        for (a, b) in star.components().iter().zip(eta.components()) {
            assert!((a - b).abs() < 1e-12);
        }
        let dv = 0.5 * wedge_4form(&eta, &eta);
        assert!((dv - sqrt_det_closed(&x, 1.0)).abs() < 1e-14);
    }

    #[test]
    fn hodge_is_an_involution() {
        let g = metric_closed(&[0.9, 0.0, 0.0, 2.0], 1.0);
        let h = HodgeStar::new(&g).unwrap();
        let w = TwoForm::from_components(4, vec![0.3, -1.2, 0.5, 2.0, 0.1, -0.7]);
        let ww = h.apply(&h.apply(&w));
        for (a, b) in ww.components().iter().zip(w.components()) {
            assert!((a - b).abs() < 1e-12);
        }
    }

    #[test]
    fn boundary_rejected() {
        let g = metric_closed(&[0.0, 0.0, 0.0, 1.0], 1.0);
        assert!(matches!(HodgeStar::new(&g), Err(Error::ChartBoundary(_))));
    }

    #[test]
    fn volume_converges() {
        let exact = 4.5 * PI * PI;
        let v16 = volume_cp2(16).unwrap();
        assert!(((v16 - exact) / exact).abs() < 1e-10);
        assert!(volume_cp2(3).is_err());
    }

    #[test]
    fn normalization_of_omega() {
        let (a, b) = omega_normalization(32, 16).unwrap();
        assert!((a - 1.0).abs() < 1e-12);
        assert!((b - 1.0).abs() < 1e-10);
    }
}
