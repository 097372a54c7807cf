//! Small dense complex matrices.
//!
//! Everything in this crate lives in dimension ≤ 8, so plain heap-backed
//! `nalgebra` matrices are used throughout. The one piece of machinery worth
//! caching is the spectral decomposition of a fixed Hermitian generator:
//! `exp(i t G) = V diag(exp(i t λ)) V†` is then a pair of matrix products.

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;

pub type C64 = Complex64;
pub type CMat = DMatrix<C64>;

pub const ZERO: C64 = C64::new(0.0, 0.0);
pub const ONE: C64 = C64::new(1.0, 0.0);
pub const I: C64 = C64::new(0.0, 1.0);

#[inline]
pub fn c(re: f64, im: f64) -> C64 {
    C64::new(re, im)
}

pub fn zeros(n: usize) -> CMat {
    CMat::zeros(n, n)
}

pub fn identity(n: usize) -> CMat {
    CMat::identity(n, n)
}

pub fn from_rows(rows: &[&[C64]]) -> CMat {
    let n = rows.len();
    let m = rows.first().map_or(0, |r| r.len());
    CMat::from_fn(n, m, |i, j| rows[i][j])
}

pub fn diag(values: &[C64]) -> CMat {
    CMat::from_diagonal(&DVector::from_column_slice(values))
}

pub fn dagger(m: &CMat) -> CMat {
    m.adjoint()
}

pub fn commutator(a: &CMat, b: &CMat) -> CMat {
    a * b - b * a
}

pub fn trace(m: &CMat) -> C64 {
    m.trace()
}

/// Largest entrywise modulus.
pub fn max_abs(m: &CMat) -> f64 {
    m.iter().fold(0.0_f64, |acc, z| acc.max(z.norm()))
}

pub fn max_abs_diff(a: &CMat, b: &CMat) -> f64 {
    assert_eq!(a.shape(), b.shape(), "shape mismatch");
    a.iter()
        .zip(b.iter())
        .fold(0.0_f64, |acc, (x, y)| acc.max((x - y).norm()))
}

pub fn hermitian_residual(m: &CMat) -> f64 {
    max_abs_diff(m, &m.adjoint())
}

pub fn anti_hermitian_residual(m: &CMat) -> f64 {
    max_abs(&(m + m.adjoint()))
}

pub fn unitarity_residual(u: &CMat) -> f64 {
    max_abs_diff(&(u.adjoint() * u), &identity(u.ncols()))
}

/// Largest off-diagonal modulus.
pub fn off_diagonal_residual(m: &CMat) -> f64 {
    let mut r = 0.0_f64;
    for i in 0..m.nrows() {
        for j in 0..m.ncols() {
            if i != j {
                r = r.max(m[(i, j)].norm());
            }
        }
    }
    r
}

/// Spectral norm (largest singular value).
pub fn operator_norm(m: &CMat) -> f64 {
    m.clone()
        .singular_values()
        .iter()
        .fold(0.0_f64, |acc, s| acc.max(*s))
}

/// Sub-block selecting `rows` × `cols`.
pub fn block(m: &CMat, rows: &[usize], cols: &[usize]) -> CMat {
    CMat::from_fn(rows.len(), cols.len(), |i, j| m[(rows[i], cols[j])])
}

pub fn scale(m: &CMat, s: C64) -> CMat {
    m.map(|z| z * s)
}

pub fn scale_re(m: &CMat, s: f64) -> CMat {
    m.map(|z| z * s)
}

/// Pauli matrices σx, σy, σz.
pub fn pauli() -> [CMat; 3] {
    [
        from_rows(&[&[ZERO, ONE], &[ONE, ZERO]]),
        from_rows(&[&[ZERO, -I], &[I, ZERO]]),
        from_rows(&[&[ONE, ZERO], &[ZERO, -ONE]]),
    ]
}

/// Eigen-decomposition of a Hermitian matrix with eigenvalues ascending.
pub fn hermitian_eigen(h: &CMat) -> (Vec<f64>, CMat) {
    let n = h.nrows();
    // symmetrize so tiny anti-Hermitian noise does not leak into the solver
    let sym = (h + h.adjoint()).map(|z| z * 0.5);
    let eig = sym.symmetric_eigen();
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&a, &b| eig.eigenvalues[a].total_cmp(&eig.eigenvalues[b]));
    let values = order.iter().map(|&k| eig.eigenvalues[k]).collect();
    let vectors = CMat::from_fn(n, n, |i, j| eig.eigenvectors[(i, order[j])]);
    (values, vectors)
}

/// Cached spectral decomposition of a Hermitian generator, used to evaluate
/// `exp(i t G)` for many values of `t`.
#[derive(Debug, Clone)]
pub struct HermitianExp {
    values: Vec<f64>,
    vectors: Option<CMat>,
}

impl HermitianExp {
    pub fn new(generator: &CMat) -> Self {
        if off_diagonal_residual(generator) == 0.0 {
            let values = (0..generator.nrows())
                .map(|k| generator[(k, k)].re)
                .collect();
            return Self {
                values,
                vectors: None,
            };
        }
        let (values, vectors) = hermitian_eigen(generator);
        Self {
            values,
            vectors: Some(vectors),
        }
    }

    pub fn dim(&self) -> usize {
        self.values.len()
    }

    pub fn eigenvalues(&self) -> &[f64] {
        &self.values
    }

    /// `exp(i t G)`.
    pub fn exp_i(&self, t: f64) -> CMat {
        let phases: Vec<C64> = self
            .values
            .iter()
            .map(|&l| C64::from_polar(1.0, t * l))
            .collect();
        match &self.vectors {
            None => diag(&phases),
            Some(v) => {
                let mut scaled = v.clone();
                for (j, p) in phases.iter().enumerate() {
                    for i in 0..scaled.nrows() {
                        scaled[(i, j)] *= p;
                    }
                }
                scaled * v.adjoint()
            }
        }
    }
}

/// `exp(-i t H)` for Hermitian `H`.
pub fn expm_minus_i(h: &CMat, t: f64) -> CMat {
    HermitianExp::new(h).exp_i(-t)
}

/// `exp(X)` for anti-Hermitian `X`, computed through the Hermitian `-iX`.
pub fn expm_anti_hermitian(x: &CMat) -> CMat {
    let h = x.map(|z| z * (-I));
    HermitianExp::new(&h).exp_i(1.0)
}

/// Closest unitary in Frobenius norm (unitary factor of the polar
/// decomposition).
pub fn polar_unitary(m: &CMat) -> CMat {
    let svd = m.clone().svd(true, true);
    let u = svd.u.expect("svd u");
    let vt = svd.v_t.expect("svd v_t");
    u * vt
}

/// Row-major real and imaginary parts, the JSON layout of a complex matrix.
#[derive(Debug, Clone, PartialEq, serde::Serialize, serde::Deserialize)]
pub struct MatrixParts {
    pub re: Vec<Vec<f64>>,
    pub im: Vec<Vec<f64>>,
}

impl From<&CMat> for MatrixParts {
    fn from(m: &CMat) -> Self {
        let rows = |f: fn(&C64) -> f64| (0..m.nrows()).map(|i| (0..m.ncols()).map(|j| f(&m[(i, j)])).collect()).collect();
        Self {
            re: rows(|z| z.re),
            im: rows(|z| z.im),
        }
    }
}

impl MatrixParts {
    pub fn to_matrix(&self) -> CMat {
        let n = self.re.len();
        let k = self.re.first().map_or(0, Vec::len);
        CMat::from_fn(n, k, |i, j| C64::new(self.re[i][j], self.im[i][j]))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn pauli_algebra() {
        let [sx, sy, sz] = pauli();
        let comm = commutator(&sx, &sy);
        assert!(max_abs_diff(&comm, &scale(&sz, c(0.0, 2.0))) < 1e-15);
        assert!(max_abs_diff(&(&sx * &sx), &identity(2)) < 1e-15);
    }

    #[test]
    fn exp_of_pauli_y_matches_rotation() {
        let [_, sy, _] = pauli();
        let t = 0.731;
        let u = HermitianExp::new(&sy).exp_i(t);
        let expected = from_rows(&[
            &[c(t.cos(), 0.0), c(t.sin(), 0.0)],
            &[c(-t.sin(), 0.0), c(t.cos(), 0.0)],
        ]);
        assert!(max_abs_diff(&u, &expected) < 1e-14);
    }

    #[test]
    fn exp_matches_nalgebra_pade() {
        let h = from_rows(&[
            &[c(0.3, 0.0), c(0.1, -0.4), c(0.0, 0.2)],
            &[c(0.1, 0.4), c(-1.2, 0.0), c(0.5, 0.0)],
            &[c(0.0, -0.2), c(0.5, 0.0), c(0.7, 0.0)],
        ]);
        let ours = HermitianExp::new(&h).exp_i(1.7);
        let pade = h.map(|z| z * c(0.0, 1.7)).exp();
        assert!(max_abs_diff(&ours, &pade) < 1e-12);
        assert!(unitarity_residual(&ours) < 1e-13);
    }

    #[test]
    fn diagonal_generator_shortcut() {
        let h = diag(&[c(1.0, 0.0), c(-0.5, 0.0)]);
        let u = HermitianExp::new(&h).exp_i(2.0);
        assert!((u[(0, 0)] - C64::from_polar(1.0, 2.0)).norm() < 1e-15);
        assert!((u[(1, 1)] - C64::from_polar(1.0, -1.0)).norm() < 1e-15);
        assert_eq!(u[(0, 1)], ZERO);
    }

    #[test]
    fn polar_factor_is_unitary_and_fixes_unitaries() {
        let [sx, sy, _] = pauli();
        let u = HermitianExp::new(&(&sx + &sy)).exp_i(0.4);
        assert!(max_abs_diff(&polar_unitary(&u), &u) < 1e-13);
        let m = scale_re(&u, 0.9);
        assert!(max_abs_diff(&polar_unitary(&m), &u) < 1e-13);
    }
}
