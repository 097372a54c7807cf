//! Generators of su(2) and su(3): Gell-Mann matrices, structure constants,
//! spin-j operators, the adjoint representation and its Cartan basis.
//!
//! Indices are 0-based in code. Documentation quotes the conventional
//! 1-based labels, so `f(0, 1, 2)` is f₁₂₃.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::{
    c, commutator, dagger, diag, hermitian_eigen, hermitian_residual, max_abs_diff,
    off_diagonal_residual, scale, trace, unitarity_residual, zeros, CMat, C64, I, ONE,
};

/// Which representation a [`GeneratorSet`] carries.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Representation {
    /// Spin-j operators (Jx, Jy, Jz); `twice_j` = 2j.
    Su2Spin { twice_j: u32 },
    /// Gell-Mann matrices λ₁..λ₈.
    Su3Defining,
    /// (Λᵢ)ⱼₖ = i fᵢⱼₖ.
    Su3Adjoint,
    /// Adjoint generators rotated so that Λ′₃ and Λ′₈ are diagonal.
    Su3AdjointCartan,
}

/// An ordered family of Hermitian matrices.
#[derive(Debug, Clone)]
pub struct GeneratorSet {
    pub label: Representation,
    pub generators: Vec<CMat>,
}

impl GeneratorSet {
    pub fn dim(&self) -> usize {
        self.generators[0].nrows()
    }

    pub fn len(&self) -> usize {
        self.generators.len()
    }

    pub fn is_empty(&self) -> bool {
        self.generators.is_empty()
    }

    pub fn get(&self, i: usize) -> &CMat {
        &self.generators[i]
    }

    /// Largest Hermiticity defect over all generators.
    pub fn hermitian_residual(&self) -> f64 {
        self.generators
            .iter()
            .map(hermitian_residual)
            .fold(0.0, f64::max)
    }

    /// max over i,j of ‖[Gᵢ,Gⱼ] − i·s·Σₖ fᵢⱼₖ Gₖ‖, with `s` the
    /// representation-dependent scale (2 for λ, −1 for Λ).
    pub fn commutator_residual(&self, f: &StructureConstants, s: f64) -> f64 {
        let n = self.len();
        let mut worst = 0.0_f64;
        for i in 0..n {
            for j in 0..n {
                let lhs = commutator(&self.generators[i], &self.generators[j]);
                let mut rhs = zeros(self.dim());
                for k in 0..n {
                    let fijk = f.get(i, j, k);
                    if fijk != 0.0 {
                        rhs += scale(&self.generators[k], I * (s * fijk));
                    }
                }
                worst = worst.max(max_abs_diff(&lhs, &rhs));
            }
        }
        worst
    }

    /// max over i,j of |Tr(GᵢGⱼ) − n δᵢⱼ|.
    pub fn trace_orthogonality_residual(&self, norm: f64) -> f64 {
        let n = self.len();
        let mut worst = 0.0_f64;
        for i in 0..n {
            for j in 0..n {
                let t = trace(&(&self.generators[i] * &self.generators[j]));
                let expected = if i == j { norm } else { 0.0 };
                worst = worst.max((t - c(expected, 0.0)).norm());
            }
        }
        worst
    }
}

/// A spin quantum number stored as the integer 2j.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "f64", into = "f64")]
pub struct Spin(u32);

impl Spin {
    pub fn from_twice(twice_j: u32) -> Result<Self> {
        if twice_j == 0 {
            return Err(Error::InvalidSpin(0.0));
        }
        Ok(Self(twice_j))
    }

    pub fn new(j: f64) -> Result<Self> {
        let t = 2.0 * j;
        if !(t.is_finite() && t >= 1.0 && (t - t.round()).abs() < 1e-12) {
            return Err(Error::InvalidSpin(j));
        }
        Ok(Self(t.round() as u32))
    }

    pub fn twice(self) -> u32 {
        self.0
    }

    pub fn value(self) -> f64 {
        self.0 as f64 / 2.0
    }

    pub fn dim(self) -> usize {
        self.0 as usize + 1
    }

    /// Magnetic quantum numbers in basis order j, j−1, …, −j.
    pub fn projections(self) -> Vec<f64> {
        (0..self.dim()).map(|k| self.value() - k as f64).collect()
    }

    /// Basis index of the state with Jz eigenvalue `m`.
    pub fn index_of(self, m: f64) -> Result<usize> {
        let k = self.value() - m;
        if m.abs() > self.value() + 1e-12 || (k - k.round()).abs() > 1e-12 {
            return Err(Error::InvalidProjection {
                j: self.value(),
                m,
            });
        }
        Ok(k.round() as usize)
    }
}

impl TryFrom<f64> for Spin {
    type Error = Error;
    fn try_from(j: f64) -> Result<Self> {
        Spin::new(j)
    }
}

impl From<Spin> for f64 {
    fn from(s: Spin) -> f64 {
        s.value()
    }
}

impl std::fmt::Display for Spin {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        if self.0.is_multiple_of(2) {
            write!(f, "{}", self.0 / 2)
        } else {
            write!(f, "{}/2", self.0)
        }
    }
}

/// (2j+1)-dimensional Jx, Jy, Jz in the basis m = j, …, −j.
pub fn spin_operators(spin: Spin) -> GeneratorSet {
    let d = spin.dim();
    let j = spin.value();
    let ms = spin.projections();
    let mut jp = zeros(d);
    for k in 1..d {
        let m = ms[k];
        jp[(k - 1, k)] = c((j * (j + 1.0) - m * (m + 1.0)).sqrt(), 0.0);
    }
    let jm = dagger(&jp);
    let jx = (&jp + &jm).map(|z| z * 0.5);
    let jy = (&jp - &jm).map(|z| z * c(0.0, -0.5));
    let jz = diag(&ms.iter().map(|&m| c(m, 0.0)).collect::<Vec<_>>());
    GeneratorSet {
        label: Representation::Su2Spin {
            twice_j: spin.twice(),
        },
        generators: vec![jx, jy, jz],
    }
}

/// The eight Gell-Mann matrices.
pub fn gell_mann() -> GeneratorSet {
    let mut l: Vec<CMat> = (0..8).map(|_| zeros(3)).collect();
    l[0][(0, 1)] = ONE;
    l[0][(1, 0)] = ONE;
    l[1][(0, 1)] = -I;
    l[1][(1, 0)] = I;
    l[2][(0, 0)] = ONE;
    l[2][(1, 1)] = -ONE;
    l[3][(0, 2)] = ONE;
    l[3][(2, 0)] = ONE;
    l[4][(0, 2)] = -I;
    l[4][(2, 0)] = I;
    l[5][(1, 2)] = ONE;
    l[5][(2, 1)] = ONE;
    l[6][(1, 2)] = -I;
    l[6][(2, 1)] = I;
    let r = 1.0 / 3f64.sqrt();
    l[7][(0, 0)] = c(r, 0.0);
    l[7][(1, 1)] = c(r, 0.0);
    l[7][(2, 2)] = c(-2.0 * r, 0.0);
    GeneratorSet {
        label: Representation::Su3Defining,
        generators: l,
    }
}

/// Totally antisymmetric structure constants of su(3).
#[derive(Debug, Clone, PartialEq)]
pub struct StructureConstants {
    f: [[[f64; 8]; 8]; 8],
}

impl Default for StructureConstants {
    fn default() -> Self {
        Self::new()
    }
}

impl StructureConstants {
    /// The standard table (1-based) f₁₂₃ = 1, f₄₅₈ = f₆₇₈ = √3/2,
    /// f₁₄₇ = f₂₄₆ = f₂₅₇ = f₃₄₅ = f₅₁₆ = f₆₃₇ = 1/2, completed by antisymmetry.
    pub fn new() -> Self {
        let h = 3f64.sqrt() / 2.0;
        let table: [((usize, usize, usize), f64); 9] = [
            ((1, 2, 3), 1.0),
            ((4, 5, 8), h),
            ((6, 7, 8), h),
            ((1, 4, 7), 0.5),
            ((2, 4, 6), 0.5),
            ((2, 5, 7), 0.5),
            ((3, 4, 5), 0.5),
            ((5, 1, 6), 0.5),
            ((6, 3, 7), 0.5),
        ];
        let mut f = [[[0.0; 8]; 8]; 8];
        for ((i, j, k), v) in table {
            let (i, j, k) = (i - 1, j - 1, k - 1);
            for (p, sign) in [
                ((i, j, k), 1.0),
                ((j, k, i), 1.0),
                ((k, i, j), 1.0),
                ((j, i, k), -1.0),
                ((i, k, j), -1.0),
                ((k, j, i), -1.0),
            ] {
                f[p.0][p.1][p.2] = sign * v;
            }
        }
        Self { f }
    }

    /// fᵢⱼₖ = (1/4i) Tr([λᵢ,λⱼ]λₖ) evaluated numerically.
    pub fn from_trace(gm: &GeneratorSet) -> Self {
        let mut f = [[[0.0; 8]; 8]; 8];
        for (i, fi) in f.iter_mut().enumerate() {
            for (j, fij) in fi.iter_mut().enumerate() {
                let comm = commutator(gm.get(i), gm.get(j));
                for (k, v) in fij.iter_mut().enumerate() {
                    let t = trace(&(&comm * gm.get(k))) / c(0.0, 4.0);
                    *v = t.re;
                }
            }
        }
        Self { f }
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize, k: usize) -> f64 {
        self.f[i][j][k]
    }

    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        let mut worst = 0.0_f64;
        for i in 0..8 {
            for j in 0..8 {
                for k in 0..8 {
                    worst = worst.max((self.f[i][j][k] - other.f[i][j][k]).abs());
                }
            }
        }
        worst
    }

    /// Largest violation of fᵢⱼₖ = −fⱼᵢₖ = −fᵢₖⱼ.
    pub fn antisymmetry_residual(&self) -> f64 {
        let mut worst = 0.0_f64;
        for i in 0..8 {
            for j in 0..8 {
                for k in 0..8 {
                    let v = self.f[i][j][k];
                    worst = worst
                        .max((v + self.f[j][i][k]).abs())
                        .max((v + self.f[i][k][j]).abs());
                }
            }
        }
        worst
    }

    /// Largest |Σₘ (fᵢⱼₘfₘₖₗ + fⱼₖₘfₘᵢₗ + fₖᵢₘfₘⱼₗ)|.
    pub fn jacobi_residual(&self) -> f64 {
        let f = &self.f;
        let mut worst = 0.0_f64;
        for i in 0..8 {
            for j in 0..8 {
                for k in 0..8 {
                    for l in 0..8 {
                        let s: f64 = (0..8)
                            .map(|m| {
                                f[i][j][m] * f[m][k][l]
                                    + f[j][k][m] * f[m][i][l]
                                    + f[k][i][m] * f[m][j][l]
                            })
                            .sum();
                        worst = worst.max(s.abs());
                    }
                }
            }
        }
        worst
    }
}

/// The adjoint generators (Λᵢ)ⱼₖ = i fᵢⱼₖ. They satisfy
/// [Λᵢ,Λⱼ] = −i fᵢⱼₖ Λₖ.
pub fn adjoint_generators(f: &StructureConstants) -> GeneratorSet {
    let generators = (0..8)
        .map(|i| CMat::from_fn(8, 8, |j, k| c(0.0, f.get(i, j, k))))
        .collect();
    GeneratorSet {
        label: Representation::Su3Adjoint,
        generators,
    }
}

/// Diagonal of Λ′₃ in the standard weight ordering.
pub const LAMBDA3_WEIGHTS: [f64; 8] = [-0.5, 0.5, -1.0, 0.0, 1.0, 0.0, 0.5, -0.5];

/// Diagonal of Λ′₈ in the standard weight ordering.
pub const LAMBDA8_WEIGHTS: [f64; 8] = [
    -0.866_025_403_784_438_6,
    -0.866_025_403_784_438_6,
    0.0,
    0.0,
    0.0,
    0.0,
    0.866_025_403_784_438_6,
    0.866_025_403_784_438_6,
];

/// Unitary that diagonalizes Λ₃ and Λ₈ simultaneously: Λ′ᵢ = V†ΛᵢV.
#[derive(Debug, Clone)]
pub struct CartanTransform {
    pub v: CMat,
    pub lambda3_diag: [f64; 8],
    pub lambda8_diag: [f64; 8],
}

impl CartanTransform {
    /// The standard transform, entered as a literal matrix.
    pub fn standard() -> Self {
        let r = std::f64::consts::FRAC_1_SQRT_2;
        let mut v = zeros(8);
        v[(0, 2)] = c(0.0, r);
        v[(0, 4)] = c(0.0, r);
        v[(1, 2)] = c(-r, 0.0);
        v[(1, 4)] = c(r, 0.0);
        v[(2, 3)] = ONE;
        v[(3, 0)] = c(0.0, r);
        v[(3, 6)] = c(0.0, r);
        v[(4, 0)] = c(-r, 0.0);
        v[(4, 6)] = c(r, 0.0);
        v[(5, 1)] = c(0.0, r);
        v[(5, 7)] = c(0.0, r);
        v[(6, 1)] = c(-r, 0.0);
        v[(6, 7)] = c(r, 0.0);
        v[(7, 5)] = ONE;
        Self {
            v,
            lambda3_diag: LAMBDA3_WEIGHTS,
            lambda8_diag: LAMBDA8_WEIGHTS,
        }
    }

    /// Checks that `self.v` is unitary and diagonalizes Λ₃, Λ₈ onto the
    /// stored diagonals. Returns the worst residual.
    pub fn residual(&self, adjoint: &GeneratorSet) -> f64 {
        let l3 = dagger(&self.v) * adjoint.get(2) * &self.v;
        let l8 = dagger(&self.v) * adjoint.get(7) * &self.v;
        let d3 = diag(&self.lambda3_diag.map(|x| c(x, 0.0)));
        let d8 = diag(&self.lambda8_diag.map(|x| c(x, 0.0)));
        unitarity_residual(&self.v)
            .max(max_abs_diff(&l3, &d3))
            .max(max_abs_diff(&l8, &d8))
    }
}

/// The standard transform, validated against `adjoint`.
pub fn cartan_transform(adjoint: &GeneratorSet) -> Result<CartanTransform> {
    if adjoint.label != Representation::Su3Adjoint {
        return Err(Error::RepresentationMismatch(format!(
            "expected su3-adjoint, got {:?}",
            adjoint.label
        )));
    }
    let ct = CartanTransform::standard();
    let r = ct.residual(adjoint);
    if r > 1e-10 {
        return Err(Error::DiagonalizationResidual(r));
    }
    Ok(ct)
}

/// Independent construction: diagonalize Λ₃ + κΛ₈ for a generic κ and sort
/// the eigenvectors into the standard weight ordering. Columns agree with
/// [`CartanTransform::standard`] only up to phases, and up to a unitary
/// rotation inside the two-dimensional zero-weight space.
pub fn simultaneous_diagonalization(adjoint: &GeneratorSet) -> Result<CartanTransform> {
    const KAPPA: f64 = 0.371_390_676_354_103_9;
    let k = adjoint.get(2) + scale(adjoint.get(7), c(KAPPA, 0.0));
    let (values, vectors) = hermitian_eigen(&k);
    let mut used = [false; 8];
    let mut v = zeros(8);
    for col in 0..8 {
        let target = LAMBDA3_WEIGHTS[col] + KAPPA * LAMBDA8_WEIGHTS[col];
        let pick = (0..8)
            .filter(|&e| !used[e])
            .min_by(|&a, &b| {
                (values[a] - target)
                    .abs()
                    .total_cmp(&(values[b] - target).abs())
            })
            .expect("eight eigenvalues");
        if (values[pick] - target).abs() > 1e-8 {
            return Err(Error::DiagonalizationResidual((values[pick] - target).abs()));
        }
        used[pick] = true;
        v.set_column(col, &vectors.column(pick));
    }
    let ct = CartanTransform {
        v,
        lambda3_diag: LAMBDA3_WEIGHTS,
        lambda8_diag: LAMBDA8_WEIGHTS,
    };
    let r = ct.residual(adjoint);
    if r > 1e-10 {
        return Err(Error::DiagonalizationResidual(r));
    }
    Ok(ct)
}

/// Distance between two transforms modulo the freedom left by the weight
/// decomposition: compares the projectors onto each weight space.
pub fn weight_space_distance(a: &CartanTransform, b: &CartanTransform) -> f64 {
    let spaces: [&[usize]; 7] = [&[0], &[1], &[2], &[3, 5], &[4], &[6], &[7]];
    let mut worst = 0.0_f64;
    for cols in spaces {
        let proj = |v: &CMat| {
            let mut p = zeros(8);
            for &k in cols {
                let col = v.column(k).into_owned();
                p += &col * col.adjoint();
            }
            p
        };
        worst = worst.max(max_abs_diff(&proj(&a.v), &proj(&b.v)));
    }
    worst
}

/// Λ′ᵢ = V†ΛᵢV for all eight generators.
pub fn transformed_generators(ct: &CartanTransform, adjoint: &GeneratorSet) -> GeneratorSet {
    let vd = dagger(&ct.v);
    GeneratorSet {
        label: Representation::Su3AdjointCartan,
        generators: adjoint
            .generators
            .iter()
            .map(|g| &vd * g * &ct.v)
            .collect(),
    }
}

/// Largest off-diagonal entry of Λ′₃ and Λ′₈.
pub fn cartan_off_diagonal(cartan: &GeneratorSet) -> f64 {
    off_diagonal_residual(cartan.get(2)).max(off_diagonal_residual(cartan.get(7)))
}

/// The six non-Cartan Λ′ᵢ (i = 1, 2, 4, 5, 6, 7) as published, keyed by the
/// 0-based generator index.
pub fn published_cartan_generators() -> Vec<(usize, CMat)> {
    let h = c(0.5, 0.0);
    let ih = c(0.0, 0.5);
    let r2 = std::f64::consts::FRAC_1_SQRT_2;
    let r8 = 1.0 / 8f64.sqrt();
    let q = (3.0 / 8.0f64).sqrt();
    let set = |entries: &[(usize, usize, C64)]| {
        let mut m = zeros(8);
        for &(i, j, z) in entries {
            m[(i - 1, j - 1)] = z;
        }
        m
    };
    let l1 = set(&[
        (1, 2, -h),
        (2, 1, -h),
        (3, 4, c(0.0, -r2)),
        (4, 3, c(0.0, r2)),
        (4, 5, c(0.0, -r2)),
        (5, 4, c(0.0, r2)),
        (7, 8, h),
        (8, 7, h),
    ]);
    let l2 = set(&[
        (1, 2, ih),
        (2, 1, -ih),
        (3, 4, c(-r2, 0.0)),
        (4, 3, c(-r2, 0.0)),
        (4, 5, c(-r2, 0.0)),
        (5, 4, c(-r2, 0.0)),
        (7, 8, ih),
        (8, 7, -ih),
    ]);
    let l4 = set(&[
        (1, 4, c(0.0, -r8)),
        (1, 6, c(0.0, -q)),
        (2, 5, h),
        (3, 8, -h),
        (4, 1, c(0.0, r8)),
        (4, 7, c(0.0, -r8)),
        (5, 2, h),
        (6, 1, c(0.0, q)),
        (6, 7, c(0.0, -q)),
        (7, 4, c(0.0, r8)),
        (7, 6, c(0.0, q)),
        (8, 3, -h),
    ]);
    let l5 = set(&[
        (1, 4, c(-r8, 0.0)),
        (1, 6, c(-q, 0.0)),
        (2, 5, -ih),
        (3, 8, ih),
        (4, 1, c(-r8, 0.0)),
        (4, 7, c(-r8, 0.0)),
        (5, 2, ih),
        (6, 1, c(-q, 0.0)),
        (6, 7, c(-q, 0.0)),
        (7, 4, c(-r8, 0.0)),
        (7, 6, c(-q, 0.0)),
        (8, 3, -ih),
    ]);
    let l6 = set(&[
        (1, 3, h),
        (2, 4, c(0.0, r8)),
        (2, 6, c(0.0, -q)),
        (3, 1, h),
        (4, 2, c(0.0, -r8)),
        (4, 8, c(0.0, r8)),
        (5, 7, -h),
        (6, 2, c(0.0, q)),
        (6, 8, c(0.0, -q)),
        (7, 5, -h),
        (8, 4, c(0.0, -r8)),
        (8, 6, c(0.0, q)),
    ]);
    let l7 = set(&[
        (1, 3, -ih),
        (2, 4, c(r8, 0.0)),
        (2, 6, c(-q, 0.0)),
        (3, 1, ih),
        (4, 2, c(r8, 0.0)),
        (4, 8, c(r8, 0.0)),
        (5, 7, ih),
        (6, 2, c(-q, 0.0)),
        (6, 8, c(-q, 0.0)),
        (7, 5, -ih),
        (8, 4, c(r8, 0.0)),
        (8, 6, c(-q, 0.0)),
    ]);
    vec![(0, l1), (1, l2), (3, l4), (4, l5), (5, l6), (6, l7)]
}

/// Worst entrywise distance between computed Λ′ᵢ and the published table.
pub fn published_cartan_residual(cartan: &GeneratorSet) -> f64 {
    published_cartan_generators()
        .iter()
        .map(|(i, m)| max_abs_diff(cartan.get(*i), m))
        .fold(0.0, f64::max)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::{max_abs, ZERO};

    #[test]
    fn gell_mann_normalization_and_hermiticity() {
        let gm = gell_mann();
        assert_eq!(gm.len(), 8);
        assert_eq!(gm.dim(), 3);
        assert!(gm.hermitian_residual() < 1e-15);
        assert!(gm.trace_orthogonality_residual(2.0) < 1e-12);
        assert_eq!(gm.get(0)[(0, 1)], ONE);
        assert_eq!(gm.get(0)[(1, 0)], ONE);
    }

    #[test]
    fn structure_constant_values() {
        let f = StructureConstants::new();
        let h = 3f64.sqrt() / 2.0;
        assert_eq!(f.get(3, 4, 7), h);
        assert_eq!(f.get(4, 3, 7), -h);
        assert_eq!(f.get(0, 1, 3), 0.0);
        assert_eq!(f.get(0, 1, 2), 1.0);
        assert!(f.antisymmetry_residual() == 0.0);
        assert!(f.jacobi_residual() < 1e-14);
    }

    #[test]
    fn table_matches_trace_formula() {
        let gm = gell_mann();
        let f = StructureConstants::new();
        let ft = StructureConstants::from_trace(&gm);
        assert!(f.max_abs_diff(&ft) < 1e-14);
        assert!(gm.commutator_residual(&f, 2.0) < 1e-14);
    }

    #[test]
    fn spin_half_is_half_pauli() {
        let s = spin_operators(Spin::new(0.5).unwrap());
        let p = crate::linalg::pauli();
        for k in 0..3 {
            assert!(max_abs_diff(s.get(k), &p[k].map(|z| z * 0.5)) < 1e-15);
        }
    }

    #[test]
    fn spin_commutation_and_casimir() {
        for twice in 1..=6 {
            let spin = Spin::from_twice(twice).unwrap();
            let s = spin_operators(spin);
            let comm = commutator(s.get(0), s.get(1));
            assert!(max_abs_diff(&comm, &scale(s.get(2), I)) < 1e-12);
            let j = spin.value();
            let cas = s.get(0) * s.get(0) + s.get(1) * s.get(1) + s.get(2) * s.get(2);
            let expected = crate::linalg::identity(spin.dim()).map(|z| z * (j * (j + 1.0)));
            assert!(max_abs_diff(&cas, &expected) < 1e-12);
        }
        let s = spin_operators(Spin::new(1.5).unwrap());
        assert!((trace(&(s.get(2) * s.get(2))).re - 5.0).abs() < 1e-14);
        let s = spin_operators(Spin::new(1.0).unwrap());
        assert_eq!(s.get(2)[(0, 0)].re, 1.0);
        assert_eq!(s.get(2)[(2, 2)].re, -1.0);
    }

    #[test]
    fn spin_rejects_non_half_integers() {
        assert!(Spin::new(0.3).is_err());
        assert!(Spin::new(0.0).is_err());
        assert!(Spin::new(-1.0).is_err());
        let s = Spin::new(1.5).unwrap();
        assert_eq!(s.index_of(1.5).unwrap(), 0);
        assert_eq!(s.index_of(-1.5).unwrap(), 3);
        assert!(s.index_of(1.0).is_err());
        assert!(s.index_of(2.5).is_err());
        assert_eq!(s.to_string(), "3/2");
    }

    #[test]
    fn adjoint_representation() {
        let f = StructureConstants::new();
        let adj = adjoint_generators(&f);
        assert_eq!(adj.get(0)[(1, 2)], I);
        assert_eq!(adj.get(0)[(0, 0)], ZERO);
        assert!(adj.hermitian_residual() < 1e-15);
        assert!(adj.commutator_residual(&f, -1.0) < 1e-14);
        assert!(max_abs(&commutator(adj.get(2), adj.get(7))) < 1e-15);
    }

    #[test]
    fn standard_transform_diagonalizes() {
        let adj = adjoint_generators(&StructureConstants::new());
        let ct = cartan_transform(&adj).unwrap();
        assert!(ct.residual(&adj) < 1e-14);
        let cartan = transformed_generators(&ct, &adj);
        assert!(cartan_off_diagonal(&cartan) < 1e-15);
        assert!(published_cartan_residual(&cartan) < 1e-15);
        assert!((cartan.get(0)[(0, 1)].re + 0.5).abs() < 1e-15);
        assert!((cartan.get(3)[(0, 3)] - c(0.0, -1.0 / 8f64.sqrt())).norm() < 1e-15);
    }

    #[test]
    fn eigen_route_spans_same_weight_spaces() {
        let adj = adjoint_generators(&StructureConstants::new());
        let num = simultaneous_diagonalization(&adj).unwrap();
        assert!(weight_space_distance(&num, &CartanTransform::standard()) < 1e-10);
    }

    #[test]
    fn cartan_transform_rejects_wrong_representation() {
        assert!(cartan_transform(&gell_mann()).is_err());
    }
}
