use thiserror::Error;

use crate::parametrization::Manifold;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid spin j = {0}: 2j must be a positive integer")]
    InvalidSpin(f64),

    #[error("invalid magnetic quantum number m = {m} for spin j = {j}")]
    InvalidProjection { j: f64, m: f64 },

    #[error("angle {name} = {value} outside {range}")]
    AngleOutOfRange {
        name: &'static str,
        value: f64,
        range: String,
    },

    #[error("expected {expected} angles, got {found}")]
    AngleCount { expected: usize, found: usize },

    #[error("radius must be positive, got {0}")]
    NonPositiveRadius(f64),

    #[error("manifold mismatch: expected {expected:?}, got {found:?}")]
    ManifoldMismatch { expected: Manifold, found: Manifold },

    #[error("representation mismatch: {0}")]
    RepresentationMismatch(String),

    #[error("dimension mismatch: expected {expected}, got {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("simultaneous diagonalization residual {0:e} exceeds 1e-10")]
    DiagonalizationResidual(f64),

    #[error("unsupported system/level pair: {0}")]
    Unsupported(String),

    #[error("finite-difference step {0:e} outside [1e-7, 1e-3]")]
    StepOutOfRange(f64),

    #[error("finite-difference Hermitian residual {0:e} exceeds 1e-6")]
    FiniteDifferenceResidual(f64),

    #[error("point lies on a chart boundary (det g = {0:e})")]
    ChartBoundary(f64),

    #[error("grid resolution {found} below minimum {min}")]
    GridTooCoarse { found: usize, min: usize },

    #[error("loop is not closed: endpoint mismatch {0:e}")]
    OpenLoop(f64),

    #[error("loop mesh too coarse: adjacent samples {0} rad apart")]
    CoarseMesh(f64),

    #[error("segment count {0} below minimum 64")]
    TooFewSegments(usize),

    #[error("per-segment norm of A.dx = {0} exceeds 0.1")]
    SegmentTooLong(f64),

    #[error("Wilson loop not converged: doubling the segments changed W by {0:e}")]
    NotConverged(f64),

    #[error("solid angle ill-conditioned: loop comes within {0:e} of the antipodal point")]
    IllConditioned(f64),

    #[error("level gap closes along the path (gap {0:e})")]
    GapClosure(f64),

    #[error("insufficient time steps: {steps} < {required}")]
    TooFewSteps { steps: usize, required: usize },

    #[error("norm drift {0:e} exceeds 1e-8")]
    NormDrift(f64),

    #[error("leakage {0:e} out of the level subspace exceeds 1e-3")]
    Leakage(f64),

    #[error("invalid configuration: {0}")]
    Config(String),

    #[error("parse error: {0}")]
    Parse(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}
