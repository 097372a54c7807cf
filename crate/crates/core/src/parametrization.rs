//! Parameter manifolds, group-element frames and Hamiltonians.
//!
//! Coordinates are stored in a fixed order per manifold:
//!
//! | manifold | coordinates                 |
//! |----------|-----------------------------|
//! | `S2`     | (θ, φ)                      |
//! | `CP2`    | (β, α, γ, θ)                |
//! | `FLAG`   | (β, α, γ, θ, a, b)          |

use std::f64::consts::PI;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::lie_algebra::{
    adjoint_generators, cartan_transform, gell_mann, spin_operators, transformed_generators,
    GeneratorSet, Spin, StructureConstants,
};
use crate::linalg::{c, dagger, diag, scale_re, CMat, HermitianExp};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "UPPERCASE")]
pub enum Manifold {
    #[serde(alias = "s2")]
    S2,
    #[serde(alias = "cp2")]
    CP2,
    #[serde(alias = "flag")]
    FLAG,
}

/// One coordinate of a manifold chart.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Axis {
    pub name: &'static str,
    pub lo: f64,
    pub hi: f64,
    /// Periodic axes are half-open `[lo, hi)`; others are closed.
    pub periodic: bool,
}

impl Axis {
    const fn closed(name: &'static str, hi: f64) -> Self {
        Self {
            name,
            lo: 0.0,
            hi,
            periodic: false,
        }
    }

    const fn periodic(name: &'static str, hi: f64) -> Self {
        Self {
            name,
            lo: 0.0,
            hi,
            periodic: true,
        }
    }

    pub fn period(&self) -> f64 {
        self.hi - self.lo
    }

    pub fn contains(&self, x: f64) -> bool {
        if self.periodic {
            x >= self.lo && x < self.hi
        } else {
            x >= self.lo && x <= self.hi
        }
    }

    fn range_string(&self) -> String {
        if self.periodic {
            format!("[{}, {})", self.lo, self.hi)
        } else {
            format!("[{}, {}]", self.lo, self.hi)
        }
    }
}

const S2_AXES: [Axis; 2] = [Axis::closed("theta", PI), Axis::periodic("phi", 2.0 * PI)];

const CP2_AXES: [Axis; 4] = [
    Axis::closed("beta", PI),
    Axis::periodic("alpha", 2.0 * PI),
    Axis::periodic("gamma", 4.0 * PI),
    Axis::closed("theta", PI),
];

const FLAG_AXES: [Axis; 6] = [
    Axis::closed("beta", PI),
    Axis::periodic("alpha", 2.0 * PI),
    Axis::periodic("gamma", 4.0 * PI),
    Axis::closed("theta", PI),
    Axis::periodic("a", 2.0 * PI),
    Axis::closed("b", PI),
];

impl Manifold {
    /// `count` points drawn uniformly from the chart, keeping `margin` away
    /// from the ends of non-periodic axes. Deterministic in `seed`.
    pub fn sample_points(self, count: usize, seed: u64, margin: f64) -> Vec<Vec<f64>> {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
        (0..count)
            .map(|_| {
                self.axes()
                    .iter()
                    .map(|ax| {
                        if ax.periodic {
                            rng.random_range(ax.lo..ax.hi)
                        } else {
                            rng.random_range(ax.lo + margin..ax.hi - margin)
                        }
                    })
                    .collect()
            })
            .collect()
    }

    pub fn axes(self) -> &'static [Axis] {
        match self {
            Manifold::S2 => &S2_AXES,
            Manifold::CP2 => &CP2_AXES,
            Manifold::FLAG => &FLAG_AXES,
        }
    }

    pub fn dim(self) -> usize {
        self.axes().len()
    }
}

impl fmt::Display for Manifold {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Manifold::S2 => "S2",
            Manifold::CP2 => "CP2",
            Manifold::FLAG => "FLAG",
        };
        f.write_str(s)
    }
}

/// A validated point of a parameter manifold together with the radius
/// (field strength B for SU(2), R for SU(3)).
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "RawPoint")]
pub struct ParamPoint {
    manifold: Manifold,
    angles: Vec<f64>,
    radius: f64,
}

#[derive(Deserialize)]
struct RawPoint {
    manifold: Manifold,
    angles: Vec<f64>,
    #[serde(default = "unit_radius")]
    radius: f64,
}

fn unit_radius() -> f64 {
    1.0
}

impl TryFrom<RawPoint> for ParamPoint {
    type Error = Error;
    fn try_from(raw: RawPoint) -> Result<Self> {
        ParamPoint::new(raw.manifold, raw.angles, raw.radius)
    }
}

impl ParamPoint {
    pub fn new(manifold: Manifold, angles: Vec<f64>, radius: f64) -> Result<Self> {
        let axes = manifold.axes();
        if angles.len() != axes.len() {
            return Err(Error::AngleCount {
                expected: axes.len(),
                found: angles.len(),
            });
        }
        for (axis, &x) in axes.iter().zip(&angles) {
            if !axis.contains(x) {
                return Err(Error::AngleOutOfRange {
                    name: axis.name,
                    value: x,
                    range: axis.range_string(),
                });
            }
        }
        if !(radius > 0.0 && radius.is_finite()) {
            return Err(Error::NonPositiveRadius(radius));
        }
        Ok(Self {
            manifold,
            angles,
            radius,
        })
    }

    /// Like [`ParamPoint::new`] but first reduces periodic angles into their
    /// fundamental range. Closed-range angles are still checked.
    pub fn wrapped(manifold: Manifold, mut angles: Vec<f64>, radius: f64) -> Result<Self> {
        for (axis, x) in manifold.axes().iter().zip(angles.iter_mut()) {
            if axis.periodic {
                *x = axis.lo + (*x - axis.lo).rem_euclid(axis.period());
                if *x >= axis.hi {
                    *x = axis.lo;
                }
            }
        }
        Self::new(manifold, angles, radius)
    }

    pub fn manifold(&self) -> Manifold {
        self.manifold
    }

    pub fn angles(&self) -> &[f64] {
        &self.angles
    }

    pub fn radius(&self) -> f64 {
        self.radius
    }
}

/// A group element Ū(p) evaluated at a point.
#[derive(Debug, Clone)]
pub struct Frame {
    pub u: CMat,
}

/// Ordered product of one-parameter exponentials
/// Ū(x) = Πₖ exp(i x_{cₖ} Gₖ), evaluated on raw coordinate vectors.
#[derive(Debug, Clone)]
pub struct FrameBuilder {
    factors: Vec<(usize, HermitianExp)>,
    dim: usize,
    coords: usize,
}

impl FrameBuilder {
    /// `factors` are (coordinate index, generator) pairs, leftmost first.
    pub fn new(factors: Vec<(usize, CMat)>) -> Self {
        let dim = factors[0].1.nrows();
        let coords = factors.iter().map(|f| f.0).max().unwrap_or(0) + 1;
        Self {
            factors: factors
                .into_iter()
                .map(|(k, g)| (k, HermitianExp::new(&g)))
                .collect(),
            dim,
            coords,
        }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn coords(&self) -> usize {
        self.coords
    }

    /// Ū at raw coordinates; no range check, so finite-difference stencils
    /// and loop parametrizations may step outside the chart freely.
    pub fn at(&self, x: &[f64]) -> CMat {
        let mut u: Option<CMat> = None;
        for (k, e) in &self.factors {
            let f = e.exp_i(x[*k]);
            u = Some(match u {
                None => f,
                Some(acc) => acc * f,
            });
        }
        u.expect("at least one factor")
    }
}

/// Which quantum system is being driven.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum System {
    /// H₀ = B Jz (μ = 1).
    Su2Linear { spin: Spin },
    /// H₀ = (B Jz)².
    Su2Quadratic { spin: Spin },
    /// H₀ = R λ₈.
    Su3Degenerate,
    /// H₀ = R (r3 λ₃ + r8 λ₈).
    Su3Nondegenerate { r3: f64, r8: f64 },
    /// H₀ = R Λ′₈ in the adjoint representation.
    Su3Adjoint,
}

impl System {
    pub const DEFAULT_NONDEGENERATE: System = System::Su3Nondegenerate { r3: 0.5, r8: 1.0 };

    pub fn manifold(&self) -> Manifold {
        match self {
            System::Su2Linear { .. } | System::Su2Quadratic { .. } => Manifold::S2,
            System::Su3Degenerate | System::Su3Adjoint => Manifold::CP2,
            System::Su3Nondegenerate { .. } => Manifold::FLAG,
        }
    }

    pub fn dim(&self) -> usize {
        match self {
            System::Su2Linear { spin } | System::Su2Quadratic { spin } => spin.dim(),
            System::Su3Degenerate | System::Su3Nondegenerate { .. } => 3,
            System::Su3Adjoint => 8,
        }
    }

    fn validate(&self) -> Result<()> {
        if let System::Su3Nondegenerate { r3, r8 } = *self {
            let e = nondegenerate_weights(r3, r8);
            let gap = (e[0] - e[1])
                .abs()
                .min((e[0] - e[2]).abs())
                .min((e[1] - e[2]).abs());
            if !(gap > 1e-9) || !r3.is_finite() || !r8.is_finite() {
                return Err(Error::Config(format!(
                    "su3-nondegenerate needs three distinct levels, got r3={r3}, r8={r8}"
                )));
            }
        }
        Ok(())
    }

    /// Diagonal of H₀ in the rest frame.
    pub fn rest_spectrum(&self, radius: f64) -> Vec<f64> {
        match self {
            System::Su2Linear { spin } => spin.projections().iter().map(|m| radius * m).collect(),
            System::Su2Quadratic { spin } => spin
                .projections()
                .iter()
                .map(|m| (radius * m).powi(2))
                .collect(),
            System::Su3Degenerate => {
                let r = radius / 3f64.sqrt();
                vec![r, r, -2.0 * r]
            }
            System::Su3Nondegenerate { r3, r8 } => nondegenerate_weights(*r3, *r8)
                .iter()
                .map(|e| radius * e)
                .collect(),
            System::Su3Adjoint => crate::lie_algebra::LAMBDA8_WEIGHTS
                .iter()
                .map(|e| radius * e)
                .collect(),
        }
    }

    pub fn rest_hamiltonian(&self, radius: f64) -> CMat {
        let d: Vec<_> = self
            .rest_spectrum(radius)
            .into_iter()
            .map(|e| c(e, 0.0))
            .collect();
        diag(&d)
    }

    /// All energy levels, each with its ordered basis indices.
    pub fn levels(&self) -> Vec<Level> {
        match self {
            System::Su2Linear { spin } => spin
                .projections()
                .iter()
                .map(|&m| Level::Projection {
                    twice_m: (2.0 * m).round() as i32,
                })
                .collect(),
            System::Su2Quadratic { spin } => {
                let t = spin.twice() as i32;
                let mut out: Vec<Level> = (1..=t)
                    .rev()
                    .filter(|k| (t - k) % 2 == 0)
                    .map(|k| Level::Pair { twice_m: k as u32 })
                    .collect();
                if t % 2 == 0 {
                    out.push(Level::Projection { twice_m: 0 });
                }
                out
            }
            System::Su3Degenerate => vec![Level::E1, Level::E3],
            System::Su3Nondegenerate { .. } => {
                vec![Level::Flag(1), Level::Flag(2), Level::Flag(3)]
            }
            System::Su3Adjoint => vec![Level::Minus, Level::Zero, Level::Plus],
        }
    }

    /// Resolves a level label against this system.
    pub fn level_block(&self, level: Level) -> Result<LevelBlock> {
        self.validate()?;
        let unsupported = || Error::Unsupported(format!("level {level} for system {self}"));
        let indices = match (self, level) {
            (System::Su2Linear { spin }, Level::Projection { twice_m }) => {
                vec![spin.index_of(twice_m as f64 / 2.0)?]
            }
            (System::Su2Quadratic { spin }, Level::Projection { twice_m: 0 }) => {
                vec![spin.index_of(0.0)?]
            }
            (System::Su2Quadratic { spin }, Level::Pair { twice_m }) if twice_m > 0 => {
                let m = twice_m as f64 / 2.0;
                vec![spin.index_of(m)?, spin.index_of(-m)?]
            }
            (System::Su3Degenerate, Level::E1) => vec![0, 1],
            (System::Su3Degenerate, Level::E3) => vec![2],
            (System::Su3Nondegenerate { .. }, Level::Flag(k)) if (1..=3).contains(&k) => {
                vec![k as usize - 1]
            }
            (System::Su3Adjoint, Level::Minus) => vec![0, 1],
            (System::Su3Adjoint, Level::Zero) => vec![2, 3, 4, 5],
            (System::Su3Adjoint, Level::Plus) => vec![6, 7],
            _ => return Err(unsupported()),
        };
        Ok(LevelBlock {
            system: *self,
            level,
            indices,
        })
    }

    /// The frame Ū for this system as a function of raw coordinates.
    pub fn frame_builder(&self) -> FrameBuilder {
        match self {
            System::Su2Linear { spin } | System::Su2Quadratic { spin } => su2_frame_builder(
                &spin_operators(*spin),
            ),
            System::Su3Degenerate => su3_frame_builder(&gell_mann(), 0.5),
            System::Su3Nondegenerate { .. } => flag_frame_builder(),
            System::Su3Adjoint => su3_frame_builder(&adjoint_cartan_generators(), 1.0),
        }
    }
}

impl fmt::Display for System {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            System::Su2Linear { spin } => write!(f, "su2-linear:j={spin}"),
            System::Su2Quadratic { spin } => write!(f, "su2-quadratic:j={spin}"),
            System::Su3Degenerate => f.write_str("su3-degenerate"),
            System::Su3Nondegenerate { r3, r8 } => {
                write!(f, "su3-nondegenerate:r3={r3},r8={r8}")
            }
            System::Su3Adjoint => f.write_str("su3-adjoint"),
        }
    }
}

impl FromStr for System {
    type Err = Error;

    /// Accepts `su2-linear:j=3/2`, `su2-quadratic:j=1`, `su3-degenerate`
    /// (alias `su3-deg`), `su3-nondegenerate[:r3=..,r8=..]`, `su3-adjoint`.
    fn from_str(s: &str) -> Result<Self> {
        let (kind, args) = match s.split_once(':') {
            Some((k, a)) => (k.trim(), a.trim()),
            None => (s.trim(), ""),
        };
        let mut kv = std::collections::BTreeMap::new();
        for part in args.split(',').filter(|p| !p.trim().is_empty()) {
            let (k, v) = part
                .split_once('=')
                .ok_or_else(|| Error::Parse(format!("expected key=value in {part:?}")))?;
            kv.insert(k.trim().to_string(), v.trim().to_string());
        }
        let spin = |kv: &std::collections::BTreeMap<String, String>| -> Result<Spin> {
            let v = kv
                .get("j")
                .ok_or_else(|| Error::Parse(format!("{kind} needs j=…")))?;
            Spin::new(parse_half_integer(v)?)
        };
        let num = |key: &str, default: f64| -> Result<f64> {
            match kv.get(key) {
                None => Ok(default),
                Some(v) => v
                    .parse()
                    .map_err(|_| Error::Parse(format!("bad number for {key}: {v}"))),
            }
        };
        let sys = match kind {
            "su2-linear" => System::Su2Linear { spin: spin(&kv)? },
            "su2-quadratic" => System::Su2Quadratic { spin: spin(&kv)? },
            "su3-degenerate" | "su3-deg" => System::Su3Degenerate,
            "su3-nondegenerate" | "su3-nondeg" | "su3-flag" => System::Su3Nondegenerate {
                r3: num("r3", 0.5)?,
                r8: num("r8", 1.0)?,
            },
            "su3-adjoint" | "su3-adj" => System::Su3Adjoint,
            _ => return Err(Error::Parse(format!("unknown system {s:?}"))),
        };
        sys.validate()?;
        Ok(sys)
    }
}

fn parse_half_integer(v: &str) -> Result<f64> {
    let bad = || Error::Parse(format!("expected an integer or half-integer, got {v:?}"));
    match v.split_once('/') {
        Some((n, "2")) => n.trim().parse::<i32>().map(|n| n as f64 / 2.0).map_err(|_| bad()),
        Some(_) => Err(bad()),
        None => v.trim().parse::<f64>().map_err(|_| bad()),
    }
}

fn nondegenerate_weights(r3: f64, r8: f64) -> [f64; 3] {
    let s = 3f64.sqrt();
    [r3 + r8 / s, -r3 + r8 / s, -2.0 * r8 / s]
}

/// An energy level label.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "String", into = "String")]
pub enum Level {
    /// Single Jz eigenstate m = twice_m / 2.
    Projection { twice_m: i32 },
    /// Degenerate pair {|m⟩, |−m⟩} of the quadratic Hamiltonian, |m⟩ first.
    Pair { twice_m: u32 },
    /// Doubly degenerate level of R λ₈.
    E1,
    /// Non-degenerate level of R λ₈.
    E3,
    /// k-th level (1..=3) of the non-degenerate three-level system.
    Flag(u8),
    /// Adjoint levels −√3R/2, 0, +√3R/2.
    Minus,
    Zero,
    Plus,
}

impl Level {
    /// Degeneracy, if fixed by the label alone.
    pub fn degeneracy(&self) -> usize {
        match self {
            Level::Projection { .. } | Level::E3 | Level::Flag(_) => 1,
            Level::Pair { .. } | Level::E1 | Level::Minus | Level::Plus => 2,
            Level::Zero => 4,
        }
    }
}

fn half_string(twice: i32) -> String {
    if twice % 2 == 0 {
        format!("{}", twice / 2)
    } else {
        format!("{twice}/2")
    }
}

impl fmt::Display for Level {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Level::Projection { twice_m } => write!(f, "m={}", half_string(*twice_m)),
            Level::Pair { twice_m } => write!(f, "pair={}", half_string(*twice_m as i32)),
            Level::E1 => f.write_str("E1"),
            Level::E3 => f.write_str("E3"),
            Level::Flag(k) => write!(f, "flag{k}"),
            Level::Minus => f.write_str("minus"),
            Level::Zero => f.write_str("zero"),
            Level::Plus => f.write_str("plus"),
        }
    }
}

impl FromStr for Level {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let twice = |v: &str| -> Result<i32> { Ok((2.0 * parse_half_integer(v)?).round() as i32) };
        Ok(match s {
            "E1" | "e1" => Level::E1,
            "E3" | "e3" => Level::E3,
            "minus" | "-" => Level::Minus,
            "zero" | "0" => Level::Zero,
            "plus" | "+" => Level::Plus,
            _ => {
                if let Some(v) = s.strip_prefix("m=") {
                    Level::Projection { twice_m: twice(v)? }
                } else if let Some(v) = s.strip_prefix("pair=") {
                    let t = twice(v)?;
                    if t <= 0 {
                        return Err(Error::Parse(format!("pair needs m > 0, got {v}")));
                    }
                    Level::Pair { twice_m: t as u32 }
                } else if let Some(v) = s.strip_prefix("flag") {
                    let k: u8 = v
                        .parse()
                        .map_err(|_| Error::Parse(format!("bad flag level {s:?}")))?;
                    if !(1..=3).contains(&k) {
                        return Err(Error::Parse(format!("flag level must be 1..3, got {k}")));
                    }
                    Level::Flag(k)
                } else {
                    return Err(Error::Parse(format!("unknown level {s:?}")));
                }
            }
        })
    }
}

impl TryFrom<String> for Level {
    type Error = Error;
    fn try_from(s: String) -> Result<Self> {
        s.parse()
    }
}

impl From<Level> for String {
    fn from(l: Level) -> String {
        l.to_string()
    }
}

/// A level of a system together with the rest-frame basis indices that span
/// it.
#[derive(Debug, Clone, PartialEq)]
pub struct LevelBlock {
    pub system: System,
    pub level: Level,
    pub indices: Vec<usize>,
}

impl LevelBlock {
    pub fn dim(&self) -> usize {
        self.indices.len()
    }

    pub fn energy(&self, radius: f64) -> f64 {
        self.system.rest_spectrum(radius)[self.indices[0]]
    }

    /// Distance from this level to the nearest other level.
    pub fn gap(&self, radius: f64) -> f64 {
        let e = self.energy(radius);
        self.system
            .rest_spectrum(radius)
            .iter()
            .enumerate()
            .filter(|(k, _)| !self.indices.contains(k))
            .map(|(_, x)| (x - e).abs())
            .fold(f64::INFINITY, f64::min)
    }
}

/// Λ′ᵢ = V†ΛᵢV built from the standard structure constants.
pub fn adjoint_cartan_generators() -> GeneratorSet {
    let adj = adjoint_generators(&StructureConstants::new());
    let ct = cartan_transform(&adj).expect("standard transform diagonalizes");
    transformed_generators(&ct, &adj)
}

/// Ū = exp(−iJz φ) exp(−iJy θ) on coordinates (θ, φ).
pub fn su2_frame_builder(spin: &GeneratorSet) -> FrameBuilder {
    FrameBuilder::new(vec![
        (1, scale_re(spin.get(2), -1.0)),
        (0, scale_re(spin.get(1), -1.0)),
    ])
}

/// Ū = exp(iα s G₃) exp(iβ s G₂) exp(iγ s G₃) exp(iθ s G₅) on (β, α, γ, θ).
///
/// The defining representation uses `s = 1/2`. In the adjoint Cartan basis
/// the generators Λ′ already carry the factor one half relative to λ (they
/// represent −λ/2), so `s = 1`.
pub fn su3_frame_builder(gens: &GeneratorSet, s: f64) -> FrameBuilder {
    FrameBuilder::new(vec![
        (1, scale_re(gens.get(2), s)),
        (0, scale_re(gens.get(1), s)),
        (2, scale_re(gens.get(2), s)),
        (3, scale_re(gens.get(4), s)),
    ])
}

/// Ũ = Ū exp(ia λ₃/2) exp(ib λ₂/2) on (β, α, γ, θ, a, b).
pub fn flag_frame_builder() -> FrameBuilder {
    let gm = gell_mann();
    FrameBuilder::new(vec![
        (1, scale_re(gm.get(2), 0.5)),
        (0, scale_re(gm.get(1), 0.5)),
        (2, scale_re(gm.get(2), 0.5)),
        (3, scale_re(gm.get(4), 0.5)),
        (4, scale_re(gm.get(2), 0.5)),
        (5, scale_re(gm.get(1), 0.5)),
    ])
}

fn check_manifold(point: &ParamPoint, expected: Manifold) -> Result<()> {
    if point.manifold() != expected {
        return Err(Error::ManifoldMismatch {
            expected,
            found: point.manifold(),
        });
    }
    Ok(())
}

/// Ū(θ, φ) in the spin representation `rep`.
pub fn su2_frame(point: &ParamPoint, rep: &GeneratorSet) -> Result<Frame> {
    check_manifold(point, Manifold::S2)?;
    if !matches!(rep.label, crate::lie_algebra::Representation::Su2Spin { .. }) {
        return Err(Error::RepresentationMismatch(format!(
            "su2_frame needs spin operators, got {:?}",
            rep.label
        )));
    }
    Ok(Frame {
        u: su2_frame_builder(rep).at(point.angles()),
    })
}

/// Ū(β, α, γ, θ) with λ (defining) or Λ′ (adjoint Cartan basis).
pub fn su3_frame(point: &ParamPoint, rep: &GeneratorSet) -> Result<Frame> {
    use crate::lie_algebra::Representation as R;
    check_manifold(point, Manifold::CP2)?;
    let s = match rep.label {
        R::Su3Defining => 0.5,
        R::Su3AdjointCartan => 1.0,
        other => {
            return Err(Error::RepresentationMismatch(format!(
                "su3_frame needs su3-defining or the adjoint Cartan basis, got {other:?}"
            )))
        }
    };
    Ok(Frame {
        u: su3_frame_builder(rep, s).at(point.angles()),
    })
}

/// Ũ(β, α, γ, θ, a, b).
pub fn flag_frame(point: &ParamPoint) -> Result<Frame> {
    check_manifold(point, Manifold::FLAG)?;
    Ok(Frame {
        u: flag_frame_builder().at(point.angles()),
    })
}

/// H = Ū H₀ Ū†.
pub fn hamiltonian(system: &System, point: &ParamPoint) -> Result<CMat> {
    check_manifold(point, system.manifold())?;
    system.validate()?;
    let u = system.frame_builder().at(point.angles());
    Ok(&u * system.rest_hamiltonian(point.radius()) * dagger(&u))
}

/// ξⁱ = ½ Tr[H λᵢ] for the degenerate three-level system, by direct trace.
pub fn embedding_coordinates_trace(point: &ParamPoint) -> Result<[f64; 8]> {
    let h = hamiltonian(&System::Su3Degenerate, point)?;
    let gm = gell_mann();
    let mut xi = [0.0; 8];
    for (i, x) in xi.iter_mut().enumerate() {
        *x = 0.5 * (&h * gm.get(i)).trace().re;
    }
    Ok(xi)
}

/// Closed-form ξ(β, α, γ, θ; R).
pub fn embedding_coordinates(point: &ParamPoint) -> Result<[f64; 8]> {
    check_manifold(point, Manifold::CP2)?;
    Ok(embedding_closed(point.angles(), point.radius()))
}

/// Closed-form ξ on raw coordinates.
pub fn embedding_closed(x: &[f64], radius: f64) -> [f64; 8] {
    let (b, a, g, t) = (x[0], x[1], x[2], x[3]);
    let k = 3f64.sqrt() / 2.0 * radius;
    let s2 = (t / 2.0).sin().powi(2);
    [
        k * b.sin() * a.cos() * s2,
        -k * b.sin() * a.sin() * s2,
        -k * b.cos() * s2,
        -k * t.sin() * (b / 2.0).cos() * ((a + g) / 2.0).cos(),
        k * t.sin() * (b / 2.0).cos() * ((a + g) / 2.0).sin(),
        k * t.sin() * (b / 2.0).sin() * ((a - g) / 2.0).cos(),
        k * t.sin() * (b / 2.0).sin() * ((a - g) / 2.0).sin(),
        0.25 * radius * (3.0 * t.cos() + 1.0),
    ]
}

/// The full eight-angle SU(3) element
/// Ū(β,α,γ,θ) exp(ia λ₃/2) exp(ib λ₂/2) exp(ic λ₃/2) exp(iφ λ₈/2),
/// angles ordered (β, α, γ, θ, a, b, c, φ).
pub fn su3_group_element(angles: &[f64; 8]) -> CMat {
    let gm = gell_mann();
    let half = |i: usize| scale_re(gm.get(i), 0.5);
    FrameBuilder::new(vec![
        (1, half(2)),
        (0, half(1)),
        (2, half(2)),
        (3, half(4)),
        (4, half(2)),
        (5, half(1)),
        (6, half(2)),
        (7, half(7)),
    ])
    .at(angles)
}
