//! Published closed forms that disagree with the finite-difference oracle.
//!
//! Each entry keeps the expression as it is commonly printed next to the
//! corrected one used by [`super::closed`], together with an evaluator for
//! the printed variant so reports can quantify the discrepancy.

use serde::Serialize;

use crate::linalg::{c, from_rows, pauli, CMat, C64, I};
use crate::parametrization::{Level, System};

use super::closed;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum NoteTarget {
    Connection,
    Curvature,
    Embedding,
}

#[derive(Debug, Clone, Serialize)]
pub struct TranscriptionNote {
    pub id: &'static str,
    pub system: System,
    pub level: Option<Level>,
    pub target: NoteTarget,
    /// 0-based component index (m for A, pair index for F, i for ξ).
    pub component: usize,
    pub published: &'static str,
    pub corrected: &'static str,
}

pub fn transcription_notes() -> Vec<TranscriptionNote> {
    vec![
        TranscriptionNote {
            id: "e1-connection-beta",
            system: System::Su3Degenerate,
            level: Some(Level::E1),
            target: NoteTarget::Connection,
            component: 0,
            published: "A1 = (i/4)[-sin(θ/2+γ)+sin(θ/2-γ)]σx + (i/4)[cos(θ/2-γ) - cos(θ/2+γ)]σy",
            corrected: "A1 = (i/4)[-sin(θ/2+γ)+sin(θ/2-γ)]σx + (i/4)[cos(θ/2-γ) + cos(θ/2+γ)]σy",
        },
        TranscriptionNote {
            id: "adjoint-minus-curvature-12",
            system: System::Su3Adjoint,
            level: Some(Level::Minus),
            target: NoteTarget::Curvature,
            component: 0,
            published: "F12 = [[-i sinβ sin²(θ/2), (i/8) cosβ cos(θ/2) sin²(θ/2) e^{iγ}], [(i/8) … e^{-iγ}, -2i sinβ sin²(θ/2)]]",
            corrected: "F12 = [[-(i/2) sinβ sin²(θ/2), (i/4) cosβ cos(θ/2) sin²(θ/2) e^{iγ}], [(i/4) … e^{-iγ}, -i sinβ sin²(θ/2)]]",
        },
        TranscriptionNote {
            id: "adjoint-plus-curvature-12",
            system: System::Su3Adjoint,
            level: Some(Level::Plus),
            target: NoteTarget::Curvature,
            component: 0,
            published: "F12(+) = conjugate of the printed F12(-)",
            corrected: "F12(+) = conjugate of the corrected F12(-)",
        },
        TranscriptionNote {
            id: "adjoint-zero-curvature-13",
            system: System::Su3Adjoint,
            level: Some(Level::Zero),
            target: NoteTarget::Curvature,
            component: 1,
            published: "off-diagonal factor (√2/4) cosθ sin²(θ/2) e^{±iγ}",
            corrected: "off-diagonal factor (√2/4) cos(θ/2) sin²(θ/2) e^{±iγ}",
        },
        TranscriptionNote {
            id: "embedding-xi4",
            system: System::Su3Degenerate,
            level: None,
            target: NoteTarget::Embedding,
            component: 3,
            published: "ξ⁴ = +(√3/2) R sinθ cos(β/2) cos((α+γ)/2)",
            corrected: "ξ⁴ = -(√3/2) R sinθ cos(β/2) cos((α+γ)/2)",
        },
    ]
}

fn eig(p: f64) -> C64 {
    C64::from_polar(1.0, p)
}

/// The printed variant of a noted matrix component at raw coordinates.
/// Returns `None` for non-matrix notes.
pub fn published_variant(note: &TranscriptionNote, x: &[f64]) -> Option<CMat> {
    let (b, g, t) = (x[0], x[2], x[3]);
    let h = t / 2.0;
    let s2 = h.sin().powi(2);
    match note.id {
        "e1-connection-beta" => {
            let [sx, sy, _] = pauli();
            let a = c(0.0, 0.25 * (-(h + g).sin() + (h - g).sin()));
            let bb = c(0.0, 0.25 * ((h - g).cos() - (h + g).cos()));
            Some(sx.map(|z| z * a) + sy.map(|z| z * bb))
        }
        "adjoint-minus-curvature-12" | "adjoint-plus-curvature-12" => {
            let k = 0.125 * b.cos() * h.cos() * s2;
            let m = from_rows(&[
                &[c(0.0, -b.sin() * s2), I * k * eig(g)],
                &[I * k * eig(-g), c(0.0, -2.0 * b.sin() * s2)],
            ]);
            if note.id.starts_with("adjoint-plus") {
                Some(m.map(|z| z.conj()))
            } else {
                Some(m)
            }
        }
        "adjoint-zero-curvature-13" => {
            let r4 = std::f64::consts::SQRT_2 / 4.0;
            let k = t.cos() * s2;
            let mut m = closed::adjoint_zero_curvature(x).get(0, 2);
            m[(0, 1)] = eig(g) * (-r4 * k);
            m[(1, 2)] = eig(g) * (-r4 * k);
            m[(1, 0)] = eig(-g) * (r4 * k);
            m[(2, 1)] = eig(-g) * (r4 * k);
            Some(m)
        }
        _ => None,
    }
}

/// The corrected counterpart of a noted matrix component.
pub fn corrected_variant(note: &TranscriptionNote, x: &[f64]) -> Option<CMat> {
    match note.target {
        NoteTarget::Connection => {
            let block = note.system.level_block(note.level?).ok()?;
            closed::connection(&block, x).ok().map(|a| a[note.component].clone())
        }
        NoteTarget::Curvature => {
            let block = note.system.level_block(note.level?).ok()?;
            let f = closed::curvature(&block, x).ok()?;
            Some(f.components()[note.component].clone())
        }
        NoteTarget::Embedding => None,
    }
}
