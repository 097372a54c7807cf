//! One-dimensional rules and tensor-product grids.
//!
//! Reductions are parallel over the outermost axis only; the per-slice
//! partial sums are collected in index order and added sequentially, so a
//! given grid always produces the same bits regardless of thread count.

use std::f64::consts::PI;
use std::ops::{Add, Mul};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

/// Nodes and weights of a 1D rule on a finite interval.
#[derive(Debug, Clone, PartialEq)]
pub struct Rule1D {
    pub nodes: Vec<f64>,
    pub weights: Vec<f64>,
}

impl Rule1D {
    /// Gauss–Legendre rule with `n` points on `[a, b]`.
    pub fn gauss(n: usize, a: f64, b: f64) -> Self {
        let (x, w) = gauss_legendre(n);
        let half = 0.5 * (b - a);
        let mid = 0.5 * (a + b);
        Self {
            nodes: x.iter().map(|t| mid + half * t).collect(),
            weights: w.iter().map(|w| w * half).collect(),
        }
    }

    /// Trapezoid rule for a periodic integrand on `[a, b)`: equally spaced
    /// nodes starting at `a`, equal weights.
    pub fn periodic(n: usize, a: f64, b: f64) -> Self {
        let h = (b - a) / n as f64;
        Self {
            nodes: (0..n).map(|k| a + h * k as f64).collect(),
            weights: vec![h; n],
        }
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    pub fn integrate<F: Fn(f64) -> f64>(&self, f: F) -> f64 {
        self.nodes
            .iter()
            .zip(&self.weights)
            .map(|(&x, &w)| w * f(x))
            .sum()
    }
}

/// Gauss–Legendre nodes (ascending) and weights on `[-1, 1]`.
///
/// Newton iteration on the three-term recurrence, seeded with the
/// Tricomi asymptotic guess.
pub fn gauss_legendre(n: usize) -> (Vec<f64>, Vec<f64>) {
    assert!(n >= 1, "need at least one node");
    let mut nodes = vec![0.0; n];
    let mut weights = vec![0.0; n];
    let nf = n as f64;
    for i in 0..n.div_ceil(2) {
        let k = i as f64 + 1.0;
        let mut x = ((k - 0.25) / (nf + 0.5) * PI).cos()
            * (1.0 - (nf - 1.0) / (8.0 * nf * nf * nf));
        let mut dp = 0.0;
        for _ in 0..100 {
            let (p, d) = legendre_with_derivative(n, x);
            dp = d;
            let dx = p / d;
            x -= dx;
            if dx.abs() < 1e-16 {
                break;
            }
        }
        let (_, d) = legendre_with_derivative(n, x);
        if d != 0.0 {
            dp = d;
        }
        let w = 2.0 / ((1.0 - x * x) * dp * dp);
        nodes[i] = -x;
        nodes[n - 1 - i] = x;
        weights[i] = w;
        weights[n - 1 - i] = w;
    }
    if n % 2 == 1 {
        nodes[n / 2] = 0.0;
    }
    (nodes, weights)
}

fn legendre_with_derivative(n: usize, x: f64) -> (f64, f64) {
    let mut p0 = 1.0;
    let mut p1 = x;
    if n == 0 {
        return (1.0, 0.0);
    }
    for k in 2..=n {
        let kf = k as f64;
        let p2 = ((2.0 * kf - 1.0) * x * p1 - (kf - 1.0) * p0) / kf;
        p0 = p1;
        p1 = p2;
    }
    let nf = n as f64;
    let d = nf * (x * p1 - p0) / (x * x - 1.0);
    (p1, d)
}

/// Values that can be accumulated by a quadrature rule.
pub trait Accumulate:
    Copy + Send + Sync + Add<Output = Self> + Mul<f64, Output = Self>
{
    fn zero() -> Self;
}

impl Accumulate for f64 {
    fn zero() -> Self {
        0.0
    }
}

impl Accumulate for num_complex::Complex64 {
    fn zero() -> Self {
        num_complex::Complex64::new(0.0, 0.0)
    }
}

/// Tensor product of 1D rules.
#[derive(Debug, Clone)]
pub struct TensorGrid {
    pub axes: Vec<Rule1D>,
}

impl TensorGrid {
    pub fn new(axes: Vec<Rule1D>) -> Self {
        assert!(!axes.is_empty(), "grid needs at least one axis");
        Self { axes }
    }

    pub fn point_count(&self) -> usize {
        self.axes.iter().map(Rule1D::len).product()
    }

    /// Weighted sum of `f` over all grid points.
    pub fn integrate<T, F>(&self, f: F) -> T
    where
        T: Accumulate,
        F: Fn(&[f64]) -> T + Sync,
    {
        let outer = &self.axes[0];
        let rest = &self.axes[1..];
        let partials: Vec<T> = (0..outer.len())
            .into_par_iter()
            .map(|i| {
                let mut x = vec![0.0; self.axes.len()];
                x[0] = outer.nodes[i];
                let inner = sum_inner(rest, &mut x, 1, &f);
                inner * outer.weights[i]
            })
            .collect();
        partials.into_iter().fold(T::zero(), |acc, v| acc + v)
    }

    /// All grid points in lexicographic order (first axis slowest).
    pub fn points(&self) -> Vec<Vec<f64>> {
        let mut out = Vec::with_capacity(self.point_count());
        let mut idx = vec![0usize; self.axes.len()];
        loop {
            out.push(
                idx.iter()
                    .zip(&self.axes)
                    .map(|(&k, r)| r.nodes[k])
                    .collect(),
            );
            let mut d = self.axes.len();
            loop {
                if d == 0 {
                    return out;
                }
                d -= 1;
                idx[d] += 1;
                if idx[d] < self.axes[d].len() {
                    break;
                }
                idx[d] = 0;
            }
        }
    }
}

fn sum_inner<T, F>(axes: &[Rule1D], x: &mut [f64], depth: usize, f: &F) -> T
where
    T: Accumulate,
    F: Fn(&[f64]) -> T,
{
    match axes.split_first() {
        None => f(x),
        Some((rule, rest)) => {
            let mut acc = T::zero();
            for (&node, &w) in rule.nodes.iter().zip(&rule.weights) {
                x[depth] = node;
                acc = acc + sum_inner(rest, x, depth + 1, f) * w;
            }
            acc
        }
    }
}

/// Resolution request for an integration, as exposed to callers and the CLI.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct GridSpec {
    pub points_per_axis: usize,
}

impl GridSpec {
    pub const fn new(points_per_axis: usize) -> Self {
        Self { points_per_axis }
    }

    pub fn doubled(self) -> Self {
        Self::new(self.points_per_axis * 2)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn low_order_nodes_match_closed_forms() {
        let (x, w) = gauss_legendre(2);
        let r = 1.0 / 3f64.sqrt();
        assert!((x[0] + r).abs() < 1e-15 && (x[1] - r).abs() < 1e-15);
        assert!((w[0] - 1.0).abs() < 1e-15 && (w[1] - 1.0).abs() < 1e-15);

        let (x, w) = gauss_legendre(3);
        assert!((x[2] - 0.6f64.sqrt()).abs() < 1e-15);
        assert_eq!(x[1], 0.0);
        assert!((w[1] - 8.0 / 9.0).abs() < 1e-15);
        assert!((w[0] - 5.0 / 9.0).abs() < 1e-15);
    }

    #[test]
    fn weights_sum_to_interval_length() {
        for n in [1, 5, 16, 32, 64, 128, 256] {
            let (_, w) = gauss_legendre(n);
            let s: f64 = w.iter().sum();
            assert!((s - 2.0).abs() < 1e-13, "n={n} sum={s}");
        }
    }

    #[test]
    fn exact_for_polynomials_up_to_degree_2n_minus_1() {
        let n = 7;
        let rule = Rule1D::gauss(n, 0.0, 2.0);
        for k in 0..(2 * n) {
            let exact = 2f64.powi(k as i32 + 1) / (k as f64 + 1.0);
            let got = rule.integrate(|x| x.powi(k as i32));
            assert!((got - exact).abs() < 1e-12 * exact.max(1.0), "k={k}");
        }
    }

    #[test]
    fn periodic_trapezoid_is_spectral_for_trig() {
        let rule = Rule1D::periodic(16, 0.0, 2.0 * PI);
        let got = rule.integrate(|x| (3.0 * x).cos().powi(2));
        assert!((got - PI).abs() < 1e-13);
    }

    #[test]
    fn tensor_integration_is_deterministic() {
        let grid = TensorGrid::new(vec![
            Rule1D::gauss(9, 0.0, PI),
            Rule1D::gauss(7, 0.0, 1.0),
            Rule1D::periodic(8, 0.0, 2.0 * PI),
        ]);
        let f = |x: &[f64]| x[0].sin() * x[1] * (1.0 + x[2].cos());
        let a = grid.integrate(f);
        let b = grid.integrate(f);
        assert_eq!(a.to_bits(), b.to_bits());
        assert!((a - 2.0 * 0.5 * 2.0 * PI).abs() < 1e-12);
        assert_eq!(grid.points().len(), grid.point_count());
    }
}
