//! Independent reference computations for the library's closed forms and
//! integrals. Generators are written out by hand here, group elements come
//! from nalgebra's Padé exponential and eigenvectors from its Hermitian
//! eigensolver, so none of these checks reuse the library's own frames.

use std::f64::consts::PI;

use holonomy_lab::dynamics::propagate;
use holonomy_lab::gauge_field::{FieldEvaluator, FieldSource};
use holonomy_lab::holonomy::{wilson_loop, wrap_phase, LoopPath, LoopShape};
use holonomy_lab::lie_algebra::Spin;
use holonomy_lab::parametrization::{Level, Manifold, System};
use holonomy_lab::topology::{chern1, su2_monopole_charge};
use nalgebra::{DMatrix, SymmetricEigen};
use num_complex::Complex64 as C;

type M = DMatrix<C>;

fn re(x: f64) -> C {
    C::new(x, 0.0)
}

fn im(x: f64) -> C {
    C::new(0.0, x)
}

fn lambda(k: usize) -> M {
    let z = C::new(0.0, 0.0);
    let mut m = M::from_element(3, 3, z);
    let s3 = 1.0 / 3.0_f64.sqrt();
    match k {
        2 => {
            m[(0, 1)] = im(-1.0);
            m[(1, 0)] = im(1.0);
        }
        3 => {
            m[(0, 0)] = re(1.0);
            m[(1, 1)] = re(-1.0);
        }
        5 => {
            m[(0, 2)] = im(-1.0);
            m[(2, 0)] = im(1.0);
        }
        8 => {
            m[(0, 0)] = re(s3);
            m[(1, 1)] = re(s3);
            m[(2, 2)] = re(-2.0 * s3);
        }
        _ => unreachable!("only the generators of the CP² frame are needed"),
    }
    m
}

fn expi(g: &M, x: f64) -> M {
    (g * im(x)).exp()
}

/// Ū(β, α, γ, θ) = e^{iαλ3/2} e^{iβλ2/2} e^{iγλ3/2} e^{iθλ5/2}.
fn cp2_frame(x: &[f64]) -> M {
    expi(&lambda(3), x[1] / 2.0) * expi(&lambda(2), x[0] / 2.0) * expi(&lambda(3), x[2] / 2.0) * expi(&lambda(5), x[3] / 2.0)
}

fn spin_matrices(twice_j: u32) -> [M; 3] {
    let j = twice_j as f64 / 2.0;
    let d = twice_j as usize + 1;
    let m_of = |k: usize| j - k as f64;
    let mut jp = M::zeros(d, d);
    for k in 1..d {
        let m = m_of(k);
        jp[(k - 1, k)] = re((j * (j + 1.0) - m * (m + 1.0)).sqrt());
    }
    let jm = jp.adjoint();
    let jx = (&jp + &jm) * re(0.5);
    let jy = (&jp - &jm) * im(-0.5);
    let jz = M::from_diagonal(&nalgebra::DVector::from_fn(d, |k, _| re(m_of(k))));
    [jx, jy, jz]
}

/// Eigenvectors of a Hermitian matrix with eigenvalues inside `window`.
fn eigenspace(h: &M, window: (f64, f64)) -> M {
    let eig = SymmetricEigen::new(h.clone());
    let cols: Vec<usize> = (0..h.nrows())
        .filter(|&k| eig.eigenvalues[k] > window.0 && eig.eigenvalues[k] < window.1)
        .collect();
    M::from_fn(h.nrows(), cols.len(), |r, c| eig.eigenvectors[(r, cols[c])])
}

/// Lattice first Chern number of a subbundle on a closed 2-cycle
/// parametrized by u ∈ [0,1] (closed) × v ∈ [0,1) (periodic). The link
/// variables are determinants of overlap matrices, so the result does not
/// depend on the gauge chosen by the eigensolver. The sign follows
/// c₁ = (i/2π)∫Tr F with F = dA + A∧A and A = Ψ†dΨ.
fn lattice_chern(nu: usize, nv: usize, frame: impl Fn(f64, f64) -> M) -> f64 {
    let grid: Vec<Vec<M>> = (0..=nu)
        .map(|i| (0..nv).map(|k| frame(i as f64 / nu as f64, k as f64 / nv as f64)).collect())
        .collect();
    let link = |a: &M, b: &M| {
        let d = (a.adjoint() * b).determinant();
        if d.norm() < 1e-300 { C::new(1.0, 0.0) } else { d / d.norm() }
    };
    let mut total = 0.0;
    for i in 0..nu {
        for k in 0..nv {
            let k1 = (k + 1) % nv;
            let p = link(&grid[i][k], &grid[i + 1][k])
                * link(&grid[i + 1][k], &grid[i + 1][k1])
                * link(&grid[i + 1][k1], &grid[i][k1])
                * link(&grid[i][k1], &grid[i][k]);
            total += p.arg();
        }
    }
    -total / (2.0 * PI)
}

#[test]
fn monopole_charges_match_lattice_chern_numbers() {
    for twice_j in 1..=4u32 {
        let [jx, jy, jz] = spin_matrices(twice_j);
        for k in 0..=twice_j {
            let twice_m = twice_j as i32 - 2 * k as i32;
            let m = twice_m as f64 / 2.0;
            let lattice = lattice_chern(48, 48, |u, v| {
                let (t, p) = (PI * u, 2.0 * PI * v);
                let h = &jx * re(t.sin() * p.cos()) + &jy * re(t.sin() * p.sin()) + &jz * re(t.cos());
                eigenspace(&h, (m - 0.25, m + 0.25))
            });
            assert!((lattice + 2.0 * m).abs() < 1e-9, "j={} m={m}: {lattice}", twice_j as f64 / 2.0);
            let c1 = su2_monopole_charge(Spin::from_twice(twice_j).unwrap(), twice_m, 64).unwrap().c1.unwrap();
            assert!((c1.value - lattice).abs() < 1e-9);
        }
    }
}

#[test]
fn cp2_south_sphere_chern_numbers_match_lattice() {
    for (level, window, want) in [(Level::E1, (0.0, 1.0), -1.0), (Level::E3, (-2.0, 0.0), 1.0)] {
        let lattice = lattice_chern(40, 40, |u, v| {
            let u_bar = cp2_frame(&[PI * u, 2.0 * PI * v, 0.7, PI]);
            let h = &u_bar * lambda(8) * u_bar.adjoint();
            eigenspace(&h, window)
        });
        assert!((lattice - want).abs() < 1e-9, "{level}: {lattice}");
        let ev = FieldEvaluator::new(System::Su3Degenerate, level).unwrap();
        let c1 = chern1(&ev, FieldSource::Closed, 128).unwrap().value;
        assert!((c1 - lattice).abs() < 1e-9, "{level}: quadrature {c1} lattice {lattice}");
    }
}

fn frame_derivative(x: &[f64], m: usize, h: f64, cols: &[usize]) -> M {
    let mut xp = x.to_vec();
    let mut xm = x.to_vec();
    xp[m] += h;
    xm[m] -= h;
    let block = |y: &[f64]| {
        let u = cp2_frame(y);
        M::from_fn(3, cols.len(), |r, c| u[(r, cols[c])])
    };
    (block(&xp) - block(&xm)) / re(2.0 * h)
}

#[test]
fn degenerate_connection_matches_hand_built_frame() {
    let points = Manifold::CP2.sample_points(25, 17, 0.05);
    for (level, cols) in [(Level::E1, vec![0usize, 1]), (Level::E3, vec![2])] {
        let ev = FieldEvaluator::new(System::Su3Degenerate, level).unwrap();
        for x in &points {
            let u = cp2_frame(x);
            let psi = M::from_fn(3, cols.len(), |r, c| u[(r, cols[c])]);
            let closed = ev.connection_at(x, FieldSource::Closed).unwrap();
            for m in 0..4 {
                let a = psi.adjoint() * frame_derivative(x, m, 1e-5, &cols);
                let diff = (&a - &closed.components[m]).map(|z| z.norm()).max();
                assert!(diff < 1e-8, "{level} A[{m}] at {x:?}: {diff:e}");
            }
        }
    }
}

#[test]
fn degenerate_curvature_is_exterior_derivative_plus_commutator() {
    let ev = FieldEvaluator::new(System::Su3Degenerate, Level::E1).unwrap();
    let h = 1e-4;
    for x in Manifold::CP2.sample_points(10, 23, 0.1) {
        let a = |y: &[f64]| ev.connection_at(y, FieldSource::Closed).unwrap().components;
        let f = ev.curvature_at(&x, FieldSource::Closed).unwrap().form;
        let a0 = a(&x);
        for m in 0..4 {
            for n in (m + 1)..4 {
                let shifted = |k: usize, s: f64| {
                    let mut y = x.clone();
                    y[k] += s;
                    a(&y)
                };
                let dm_an = (&shifted(m, h)[n] - &shifted(m, -h)[n]) / re(2.0 * h);
                let dn_am = (&shifted(n, h)[m] - &shifted(n, -h)[m]) / re(2.0 * h);
                let want = dm_an - dn_am + &a0[m] * &a0[n] - &a0[n] * &a0[m];
                let diff = (&want - f.get(m, n)).map(|z| z.norm()).max();
                assert!(diff < 1e-7, "F[{m}{n}] at {x:?}: {diff:e}");
            }
        }
    }
}

/// G·P exp(−∮A) from the product of unitarized overlap matrices of the
/// hand-built frame along the loop.
fn overlap_holonomy(path: &LoopPath, cols: &[usize], n: usize) -> M {
    let block = |t: f64| {
        let u = cp2_frame(&path.point(t));
        M::from_fn(3, cols.len(), |r, c| u[(r, cols[c])])
    };
    let d = cols.len();
    let mut w = M::identity(d, d);
    let mut prev = block(0.0);
    let first = prev.clone();
    for k in 1..=n {
        let next = block(k as f64 / n as f64);
        let svd = (next.adjoint() * &prev).svd(true, true);
        w = svd.u.unwrap() * svd.v_t.unwrap() * w;
        prev = next;
    }
    first.adjoint() * prev * w
}

#[test]
fn non_abelian_wilson_loop_matches_overlap_product() {
    let path = LoopPath::new(LoopShape::PlaneLoop {
        manifold: Manifold::CP2,
        axes: [0, 3],
        center: vec![1.2, 0.3, 0.8, 1.5],
        radii: [0.5, 0.7],
    })
    .unwrap();
    let ev = FieldEvaluator::new(System::Su3Degenerate, Level::E1).unwrap();
    let w = wilson_loop(&ev, &path, 1024, FieldSource::Closed).unwrap().w;
    let reference = overlap_holonomy(&path, &[0, 1], 4000);
    let diff = (&w - &reference).map(|z| z.norm()).max();
    assert!(diff < 1e-6, "{diff:e}\n{w}\n{reference}");
}

#[test]
fn abelian_phase_matches_bargmann_invariant() {
    for twice_j in [1u32, 2, 3] {
        let [jx, jy, jz] = spin_matrices(twice_j);
        let twice_m = twice_j as i32;
        let m = twice_m as f64 / 2.0;
        let ev = FieldEvaluator::new(
            System::Su2Linear {
                spin: Spin::from_twice(twice_j).unwrap(),
            },
            Level::Projection { twice_m },
        )
        .unwrap();
        for theta0 in [0.4_f64, 1.3, 2.5] {
            let n = 4000;
            let states: Vec<M> = (0..n)
                .map(|k| {
                    let p = 2.0 * PI * k as f64 / n as f64;
                    let h = &jx * re(theta0.sin() * p.cos()) + &jy * re(theta0.sin() * p.sin()) + &jz * re(theta0.cos());
                    eigenspace(&h, (m - 0.25, m + 0.25))
                })
                .collect();
            let mut product = C::new(1.0, 0.0);
            for k in 0..n {
                product *= (states[k].adjoint() * &states[(k + 1) % n])[(0, 0)];
            }
            let bargmann = -product.arg();
            let wilson = wilson_loop(&ev, &LoopPath::latitude(theta0).unwrap(), 1024, FieldSource::Closed)
                .unwrap()
                .abelian_phase()
                .unwrap();
            assert!(wrap_phase(wilson - bargmann).abs() < 1e-5, "θ0={theta0}: {wilson} vs {bargmann}");
        }
    }
}

#[test]
fn propagator_matches_fine_exponential_product() {
    let h = |t: f64| lambda(8) * re(1.0) + lambda(2) * re(0.3 * (2.0 * t).sin()) + lambda(5) * re(0.2 * t.cos());
    let psi0 = M::from_fn(3, 2, |r, c| if r == c { re(1.0) } else { re(0.0) });
    let total = 3.0;
    let got = propagate(h, &psi0, total, 200);
    let fine = 20_000;
    let dt = total / fine as f64;
    let mut psi = psi0.clone();
    for k in 0..fine {
        psi = (h((k as f64 + 0.5) * dt) * im(-dt)).exp() * psi;
    }
    let diff = (&got - &psi).map(|z| z.norm()).max();
    assert!(diff < 1e-7, "{diff:e}");
}
