//! Closed-form connection and curvature components, one table per system.
//!
//! Coordinate order: (θ, φ) on S², (β, α, γ, θ) on CP², (β, α, γ, θ, a, b)
//! on the flag space. Curvatures are returned as upper-triangle components
//! F_mn, m < n.

use crate::error::{Error, Result};
use crate::geometry::TwoForm;
use crate::linalg::{c, from_rows, identity, pauli, zeros, CMat, C64, I, ZERO};
use crate::parametrization::{Level, LevelBlock, System};

fn m1(z: C64) -> CMat {
    from_rows(&[&[z]])
}

fn m2(a: C64, b: C64, cc: C64, d: C64) -> CMat {
    from_rows(&[&[a, b], &[cc, d]])
}

fn lin(terms: &[(C64, &CMat)]) -> CMat {
    let mut out = zeros(terms[0].1.nrows());
    for (s, m) in terms {
        out += m.map(|z| z * s);
    }
    out
}

fn eig(phase: f64) -> C64 {
    C64::from_polar(1.0, phase)
}

/// Tridiagonal 4×4 pattern of the zero-weight adjoint block: diagonal
/// (d1, 0, d3, 0), superdiagonal `up`, subdiagonal `lo`, fourth row and
/// column empty.
fn tri(d1: C64, d3: C64, up: C64, lo: C64) -> CMat {
    let mut m = zeros(4);
    m[(0, 0)] = d1;
    m[(2, 2)] = d3;
    m[(0, 1)] = up;
    m[(1, 2)] = up;
    m[(1, 0)] = lo;
    m[(2, 1)] = lo;
    m
}

fn unsupported(block: &LevelBlock) -> Error {
    Error::Unsupported(format!(
        "no closed form for level {} of {}",
        block.level, block.system
    ))
}

/// A_m at raw coordinates.
pub fn connection(block: &LevelBlock, x: &[f64]) -> Result<Vec<CMat>> {
    match (&block.system, block.level) {
        (System::Su2Linear { .. }, Level::Projection { twice_m }) => {
            Ok(su2_projection_connection(twice_m as f64 / 2.0, x))
        }
        (System::Su2Quadratic { .. }, Level::Projection { twice_m: 0 }) => {
            Ok(vec![zeros(1), zeros(1)])
        }
        (System::Su2Quadratic { spin }, Level::Pair { twice_m }) => {
            Ok(su2_pair_connection(spin.value(), twice_m as f64 / 2.0, x))
        }
        (System::Su3Degenerate, Level::E1) => Ok(e1_connection(x).to_vec()),
        (System::Su3Degenerate, Level::E3) => Ok(e3_connection(x).to_vec()),
        (System::Su3Nondegenerate { .. }, Level::Flag(k)) => Ok(flag_connection(k, x)),
        (System::Su3Adjoint, Level::Minus) => Ok(adjoint_minus_connection(x).to_vec()),
        (System::Su3Adjoint, Level::Plus) => Ok(adjoint_minus_connection(x)
            .iter()
            .map(|m| m.map(|z| z.conj()))
            .collect()),
        (System::Su3Adjoint, Level::Zero) => Ok(adjoint_zero_connection(x).to_vec()),
        _ => Err(unsupported(block)),
    }
}

/// F_mn at raw coordinates.
pub fn curvature(block: &LevelBlock, x: &[f64]) -> Result<TwoForm<CMat>> {
    match (&block.system, block.level) {
        (System::Su2Linear { .. }, Level::Projection { twice_m }) => {
            let m = twice_m as f64 / 2.0;
            Ok(TwoForm::from_components(2, vec![m1(c(0.0, m * x[0].sin()))]))
        }
        (System::Su2Quadratic { .. }, Level::Projection { twice_m: 0 }) => {
            Ok(TwoForm::from_components(2, vec![zeros(1)]))
        }
        (System::Su2Quadratic { spin }, Level::Pair { twice_m }) => Ok(su2_pair_curvature(
            spin.value(),
            twice_m as f64 / 2.0,
            x,
        )),
        (System::Su3Degenerate, Level::E1) => Ok(e1_curvature(x)),
        (System::Su3Degenerate, Level::E3) => Ok(e3_curvature(x)),
        (System::Su3Nondegenerate { .. }, Level::Flag(k)) => Ok(flag_curvature(k, x)),
        (System::Su3Adjoint, Level::Minus) => Ok(adjoint_minus_curvature(x)),
        (System::Su3Adjoint, Level::Plus) => {
            Ok(adjoint_minus_curvature(x).map(|m| m.map(|z| z.conj())))
        }
        (System::Su3Adjoint, Level::Zero) => Ok(adjoint_zero_curvature(x)),
        _ => Err(unsupported(block)),
    }
}

/// A_θ = 0, A_φ = −im cosθ.
fn su2_projection_connection(m: f64, x: &[f64]) -> Vec<CMat> {
    vec![zeros(1), m1(c(0.0, -m * x[0].cos()))]
}

/// Degenerate pair {|m⟩, |−m⟩} of (B Jz)². For m = 1/2 the two states are
/// coupled by J±, giving a non-Abelian connection; otherwise it is diagonal.
fn su2_pair_connection(j: f64, m: f64, x: &[f64]) -> Vec<CMat> {
    let [sx, sy, sz] = pauli();
    let t = x[0];
    if (m - 0.5).abs() < 1e-12 {
        let k = j + 0.5;
        vec![
            lin(&[(c(0.0, -0.5 * k), &sy)]),
            lin(&[(c(0.0, -0.5 * t.cos()), &sz), (c(0.0, 0.5 * k * t.sin()), &sx)]),
        ]
    } else {
        vec![zeros(2), lin(&[(c(0.0, -m * t.cos()), &sz)])]
    }
}

fn su2_pair_curvature(j: f64, m: f64, x: &[f64]) -> TwoForm<CMat> {
    let [_, _, sz] = pauli();
    let t = x[0];
    let f = if (m - 0.5).abs() < 1e-12 {
        let k = j + 0.5;
        lin(&[(c(0.0, -0.5 * (k * k - 1.0) * t.sin()), &sz)])
    } else {
        lin(&[(c(0.0, m * t.sin()), &sz)])
    };
    TwoForm::from_components(2, vec![f])
}

/// Connection of the doubly degenerate level E₁ of R λ₈.
pub fn e1_connection(x: &[f64]) -> [CMat; 4] {
    let [sx, sy, sz] = pauli();
    let id = identity(2);
    let (b, g, t) = (x[0], x[2], x[3]);
    let h = t / 2.0;
    let (s, co) = (f64::sin, f64::cos);
    let a1 = lin(&[
        (c(0.0, 0.25 * (-s(h + g) + s(h - g))), &sx),
        (c(0.0, 0.25 * (co(h - g) + co(h + g))), &sy),
    ]);
    let a2 = lin(&[
        (c(0.0, -0.25 * s(h).powi(2) * co(b)), &id),
        (c(0.0, 0.25 * (co(h).powi(2) + 1.0) * co(b)), &sz),
        (
            c(
                0.0,
                0.125 * (s(b - h + g) + s(b - h - g) + s(b + h + g) + s(b + h - g)),
            ),
            &sx,
        ),
        (
            c(
                0.0,
                0.125 * (-co(b - h + g) + co(b - h - g) - co(b + h + g) + co(b + h - g)),
            ),
            &sy,
        ),
    ]);
    let a3 = lin(&[
        (c(0.0, -0.25 * s(h).powi(2)), &id),
        (c(0.0, 0.25 * (1.0 + co(h).powi(2))), &sz),
    ]);
    [a1, a2, a3, zeros(2)]
}

pub fn e1_curvature(x: &[f64]) -> TwoForm<CMat> {
    let [sx, sy, sz] = pauli();
    let id = identity(2);
    let (b, g, t) = (x[0], x[2], x[3]);
    let h = t / 2.0;
    let (sh, ch) = (h.sin(), h.cos());
    let q = c(0.0, 0.25);
    let rot = lin(&[(c(g.cos(), 0.0), &sx), (c(g.sin(), 0.0), &sy)]);
    let rot_perp = lin(&[(c(g.cos(), 0.0), &sy), (c(-g.sin(), 0.0), &sx)]);
    let id_m_z = &id - &sz;
    let id_p_z = &id + &sz;
    let f12 = lin(&[
        (q * (b.sin() * sh * sh), &id_m_z),
        (q * (b.cos() * ch * sh * sh), &rot),
    ]);
    let f13 = lin(&[(q * (sh * sh * ch), &rot)]);
    let f14 = lin(&[(q * sh, &rot_perp)]);
    let f23 = lin(&[(-q * (b.sin() * sh * sh * ch), &rot_perp)]);
    let f24 = lin(&[
        (q * (0.5 * b.cos() * t.sin()), &id_p_z),
        (q * (b.sin() * sh), &rot),
    ]);
    let f34 = lin(&[(c(0.0, 0.125 * t.sin()), &id_p_z)]);
    TwoForm::from_components(4, vec![f12, f13, f14, f23, f24, f34])
}

/// Connection of the non-degenerate level E₃ of R λ₈.
pub fn e3_connection(x: &[f64]) -> [CMat; 4] {
    let (b, t) = (x[0], x[3]);
    let s2 = (t / 2.0).sin().powi(2);
    [
        zeros(1),
        m1(c(0.0, 0.5 * b.cos() * s2)),
        m1(c(0.0, 0.5 * s2)),
        zeros(1),
    ]
}

pub fn e3_curvature(x: &[f64]) -> TwoForm<CMat> {
    let (b, t) = (x[0], x[3]);
    let s2 = (t / 2.0).sin().powi(2);
    TwoForm::from_components(
        4,
        vec![
            m1(c(0.0, -0.5 * b.sin() * s2)),
            zeros(1),
            zeros(1),
            zeros(1),
            m1(c(0.0, -0.25 * b.cos() * t.sin())),
            m1(c(0.0, -0.25 * t.sin())),
        ],
    )
}

/// Fiber rotation r = exp(ia σz/2) exp(ib σy/2) of the flag frame, restricted
/// to the E₁ plane, and the Maurer–Cartan pieces r†∂_a r, r†∂_b r.
fn fiber(a: f64, b: f64) -> (CMat, CMat, CMat) {
    let (ca, sa) = ((a / 2.0).cos(), (a / 2.0).sin());
    let (cb, sb) = ((b / 2.0).cos(), (b / 2.0).sin());
    let rz = m2(c(ca, sa), ZERO, ZERO, c(ca, -sa));
    let ry = m2(c(cb, 0.0), c(sb, 0.0), c(-sb, 0.0), c(cb, 0.0));
    let r = rz * ry;
    let xa = m2(
        c(0.0, 0.5 * b.cos()),
        c(0.0, 0.5 * b.sin()),
        c(0.0, 0.5 * b.sin()),
        c(0.0, -0.5 * b.cos()),
    );
    let xb = m2(ZERO, c(0.5, 0.0), c(-0.5, 0.0), ZERO);
    (r, xa, xb)
}

/// Flag-space level k: k = 3 is the E₃ line; k = 1, 2 are the lines of the
/// E₁ plane selected by the fiber rotation.
fn flag_connection(k: u8, x: &[f64]) -> Vec<CMat> {
    if k == 3 {
        let mut a = e3_connection(x).to_vec();
        a.push(zeros(1));
        a.push(zeros(1));
        return a;
    }
    let kk = k as usize - 1;
    let (r, xa, xb) = fiber(x[4], x[5]);
    let rd = r.adjoint();
    let mut out: Vec<CMat> = e1_connection(x)
        .iter()
        .map(|a| m1((&rd * a * &r)[(kk, kk)]))
        .collect();
    out.push(m1(xa[(kk, kk)]));
    out.push(m1(xb[(kk, kk)]));
    out
}

fn flag_curvature(k: u8, x: &[f64]) -> TwoForm<CMat> {
    if k == 3 {
        let f = e3_curvature(x);
        return TwoForm::from_fn(6, |m, n| {
            if n < 4 {
                f.get(m, n)
            } else {
                zeros(1)
            }
        });
    }
    let kk = k as usize - 1;
    let ll = 1 - kk;
    let (r, xa, xb) = fiber(x[4], x[5]);
    let rd = r.adjoint();
    let at: Vec<CMat> = e1_connection(x).iter().map(|a| &rd * a * &r).collect();
    let f1 = e1_curvature(x);
    let b = x[5];
    TwoForm::from_fn(6, |m, n| {
        let z = match (m, n) {
            (m, n) if n < 4 => {
                let ft = &rd * f1.get(m, n) * &r;
                ft[(kk, kk)]
                    - (at[m][(kk, ll)] * at[n][(ll, kk)] - at[n][(kk, ll)] * at[m][(ll, kk)])
            }
            (m, 4) if m < 4 => -(&at[m] * &xa - &xa * &at[m])[(kk, kk)],
            (m, 5) if m < 4 => -(&at[m] * &xb - &xb * &at[m])[(kk, kk)],
            (4, 5) => {
                let sign = if kk == 0 { 1.0 } else { -1.0 };
                c(0.0, 0.5 * sign * b.sin())
            }
            _ => unreachable!(),
        };
        m1(z)
    })
}

/// Adjoint level −√3R/2.
pub fn adjoint_minus_connection(x: &[f64]) -> [CMat; 4] {
    let (b, g, t) = (x[0], x[2], x[3]);
    let h = t / 2.0;
    let a1 = m2(
        ZERO,
        (eig(h + g) + eig(-h + g)) * -0.25,
        (eig(-(h + g)) + eig(h - g)) * 0.25,
        ZERO,
    );
    let a2 = m2(
        c(0.0, -0.5 * b.cos() * t.cos()),
        I * (0.5 * b.sin() * h.cos()) * eig(g),
        I * (0.5 * b.sin() * h.cos()) * eig(-g),
        c(0.0, 0.25 * b.cos() * (3.0 - t.cos())),
    );
    let a3 = m2(
        c(0.0, -0.5 * t.cos()),
        ZERO,
        ZERO,
        c(0.0, 0.25 * (3.0 - t.cos())),
    );
    [a1, a2, a3, zeros(2)]
}

pub fn adjoint_minus_curvature(x: &[f64]) -> TwoForm<CMat> {
    let (b, g, t) = (x[0], x[2], x[3]);
    let h = t / 2.0;
    let (sh, ch) = (h.sin(), h.cos());
    let s2 = sh * sh;
    let k12 = 0.25 * b.cos() * ch * s2;
    let f12 = m2(
        c(0.0, -0.5 * b.sin() * s2),
        I * k12 * eig(g),
        I * k12 * eig(-g),
        c(0.0, -b.sin() * s2),
    );
    let f13 = m2(
        ZERO,
        I * (0.125 * s2) * (eig(h + g) + eig(-h + g)),
        I * (0.125 * s2) * (eig(-(h + g)) + eig(h - g)),
        ZERO,
    );
    let f14 = m2(ZERO, eig(g) * (-0.25 * sh), eig(-g) * (0.25 * sh), ZERO);
    let k23 = 0.25 * b.sin() * ch * s2;
    let f23 = m2(ZERO, eig(g) * k23, eig(-g) * -k23, ZERO);
    let f24 = m2(
        c(0.0, -0.5 * b.cos() * t.sin()),
        I * (0.25 * b.sin() * sh) * eig(g),
        I * (0.25 * b.sin() * sh) * eig(-g),
        c(0.0, -0.25 * b.cos() * t.sin()),
    );
    let f34 = m2(
        c(0.0, -0.5 * t.sin()),
        ZERO,
        ZERO,
        c(0.0, -0.25 * t.sin()),
    );
    TwoForm::from_components(4, vec![f12, f13, f14, f23, f24, f34])
}

/// Adjoint zero-weight level (four-fold degenerate). Basis order follows the
/// Cartan transform columns 3..6; the last state is the U(1) singlet.
pub fn adjoint_zero_connection(x: &[f64]) -> [CMat; 4] {
    let (b, g, t) = (x[0], x[2], x[3]);
    let h = t / 2.0;
    let r = std::f64::consts::SQRT_2 / 2.0;
    let a1 = tri(
        ZERO,
        ZERO,
        I * (-r * h.cos()) * eig(g),
        I * (-r * h.cos()) * eig(-g),
    );
    let d = 0.25 * b.cos() * (3.0 + t.cos());
    let a2 = tri(
        c(0.0, -d),
        c(0.0, d),
        eig(g) * (-r * b.sin() * h.cos()),
        eig(-g) * (r * b.sin() * h.cos()),
    );
    let d3 = 0.25 * (3.0 + t.cos());
    let a3 = tri(c(0.0, -d3), c(0.0, d3), ZERO, ZERO);
    [a1, a2, a3, zeros(4)]
}

pub fn adjoint_zero_curvature(x: &[f64]) -> TwoForm<CMat> {
    let (b, g, t) = (x[0], x[2], x[3]);
    let h = t / 2.0;
    let (sh, ch) = (h.sin(), h.cos());
    let s2 = sh * sh;
    let r4 = std::f64::consts::SQRT_2 / 4.0;
    let k = b.cos() * ch * s2;
    let f12 = tri(
        c(0.0, 0.5 * b.sin() * s2),
        c(0.0, -0.5 * b.sin() * s2),
        eig(g) * (-r4 * k),
        eig(-g) * (r4 * k),
    );
    let k = ch * s2;
    let f13 = tri(ZERO, ZERO, eig(g) * (-r4 * k), eig(-g) * (r4 * k));
    let f14 = tri(
        ZERO,
        ZERO,
        I * (-r4 * sh) * eig(g),
        I * (-r4 * sh) * eig(-g),
    );
    let k = b.sin() * ch * s2;
    let f23 = tri(ZERO, ZERO, I * (r4 * k) * eig(g), I * (r4 * k) * eig(-g));
    let f24 = tri(
        c(0.0, -0.25 * b.cos() * t.sin()),
        c(0.0, 0.25 * b.cos() * t.sin()),
        eig(g) * (-r4 * b.sin() * sh),
        eig(-g) * (r4 * b.sin() * sh),
    );
    let f34 = tri(
        c(0.0, -0.25 * t.sin()),
        c(0.0, 0.25 * t.sin()),
        ZERO,
        ZERO,
    );
    TwoForm::from_components(4, vec![f12, f13, f14, f23, f24, f34])
}
