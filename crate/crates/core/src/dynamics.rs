//! Brute-force adiabatic Schrödinger evolution around a loop, used as an
//! independent check on Wilson loops.
//!
//! H(t) = Ū(x(t)) H₀ Ū(x(t))† is integrated with the fourth-order
//! commutator-free Magnus scheme, whose steps are exact exponentials of
//! Hermitian matrices, so the evolution is unitary by construction.

use std::time::Instant;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::gauge_field::{FieldEvaluator, FieldSource};
use crate::holonomy::{wilson_loop_adaptive, LoopPath, DEFAULT_SEGMENTS, MAX_ADAPTIVE_SEGMENTS};
use crate::linalg::{dagger, expm_minus_i, identity, operator_norm, polar_unitary, CMat, MatrixParts, C64};
use crate::parametrization::{FrameBuilder, Level, System};

/// Minimum number of steps per unit of ‖H‖·T.
pub const STEPS_PER_PHASE: f64 = 10.0;
pub const NORM_TOLERANCE: f64 = 1e-8;
pub const LEAKAGE_TOLERANCE: f64 = 1e-3;
/// Total times of the default sweep, in units of 1/gap.
pub const DEFAULT_SWEEP: [f64; 3] = [1e2, 3e2, 1e3];

/// Time parameterization of the loop, u = t/T ↦ loop parameter.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Schedule {
    Linear,
    /// u − sin(2πu)/2π: starts and stops with zero velocity.
    #[default]
    Smooth,
}

impl Schedule {
    pub fn at(self, u: f64) -> f64 {
        match self {
            Schedule::Linear => u,
            Schedule::Smooth => u - (2.0 * std::f64::consts::PI * u).sin() / (2.0 * std::f64::consts::PI),
        }
    }
}

/// ψ(T) for i dψ/dt = H(t)ψ by the fourth-order commutator-free Magnus
/// scheme. `psi0` may hold several states as columns.
pub fn propagate<H>(hamiltonian: H, psi0: &CMat, total_time: f64, steps: usize) -> CMat
where
    H: Fn(f64) -> CMat,
{
    let s3 = 3f64.sqrt();
    let (c1, c2) = (0.5 - s3 / 6.0, 0.5 + s3 / 6.0);
    let (a1, a2) = (0.25 + s3 / 6.0, 0.25 - s3 / 6.0);
    let h = total_time / steps as f64;
    let mut psi = psi0.clone();
    for k in 0..steps {
        let t = k as f64 * h;
        let h1 = hamiltonian(t + c1 * h);
        let h2 = hamiltonian(t + c2 * h);
        let first = &h1 * C64::new(a1, 0.0) + &h2 * C64::new(a2, 0.0);
        let second = &h1 * C64::new(a2, 0.0) + &h2 * C64::new(a1, 0.0);
        psi = expm_minus_i(&first, h) * psi;
        psi = expm_minus_i(&second, h) * psi;
    }
    psi
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct EvolutionOptions {
    pub total_time: f64,
    pub steps: usize,
    pub radius: f64,
    pub schedule: Schedule,
}

impl EvolutionOptions {
    /// Options for total time `t_gap`/gap with the minimum admissible step
    /// count scaled by `step_factor` ≥ 1.
    pub fn in_gap_units(system: System, level: Level, t_gap: f64, step_factor: f64) -> Result<Self> {
        let block = system.level_block(level)?;
        let total_time = t_gap / block.gap(1.0);
        let steps = (required_steps(system, 1.0, total_time) as f64 * step_factor).ceil() as usize;
        Ok(Self {
            total_time,
            steps,
            radius: 1.0,
            schedule: Schedule::Smooth,
        })
    }
}

/// STEPS_PER_PHASE · ‖H‖ · T, rounded up.
pub fn required_steps(system: System, radius: f64, total_time: f64) -> usize {
    let norm = system.rest_spectrum(radius).iter().fold(0.0_f64, |m, e| m.max(e.abs()));
    (STEPS_PER_PHASE * norm * total_time).ceil().max(1.0) as usize
}

/// The outcome of one evolution of a level's basis around a loop.
#[derive(Debug, Clone)]
pub struct EvolutionRun {
    pub system: System,
    pub level: Level,
    pub path: LoopPath,
    pub options: EvolutionOptions,
    pub energy: f64,
    /// ∫E dt along the run.
    pub dynamical_phase: f64,
    /// Instantaneous eigenbasis of the level at the base point (columns).
    pub initial: CMat,
    pub final_states: CMat,
    pub norm_drift: f64,
    pub wall_time_s: f64,
}

impl EvolutionRun {
    /// Largest weight of an evolved basis state outside the level subspace.
    pub fn leakage(&self) -> f64 {
        let proj = &self.initial * dagger(&self.initial);
        let outside = &self.final_states - &proj * &self.final_states;
        (0..outside.ncols())
            .map(|j| outside.column(j).norm_squared())
            .fold(0.0, f64::max)
    }
}

pub fn evolve(system: System, level: Level, path: &LoopPath, options: EvolutionOptions) -> Result<EvolutionRun> {
    let start = Instant::now();
    let expected = system.manifold();
    if path.manifold() != expected {
        return Err(Error::ManifoldMismatch {
            expected,
            found: path.manifold(),
        });
    }
    if !(options.radius > 0.0) {
        return Err(Error::NonPositiveRadius(options.radius));
    }
    let block = system.level_block(level)?;
    let gap = block.gap(options.radius);
    if gap < 1e-9 {
        return Err(Error::GapClosure(gap));
    }
    let required = required_steps(system, options.radius, options.total_time);
    if options.steps < required {
        return Err(Error::TooFewSteps {
            steps: options.steps,
            required,
        });
    }
    let builder: FrameBuilder = system.frame_builder();
    let h0 = system.rest_hamiltonian(options.radius);
    let t_total = options.total_time;
    let hamiltonian = |t: f64| {
        let x = path.point(options.schedule.at(t / t_total));
        let u = builder.at(&x);
        &u * &h0 * dagger(&u)
    };
    let u0 = builder.at(&path.point(0.0));
    let all: Vec<usize> = (0..u0.nrows()).collect();
    let initial = crate::linalg::block(&u0, &all, &block.indices);
    let final_states = propagate(hamiltonian, &initial, t_total, options.steps);
    let norm_drift = (0..final_states.ncols())
        .map(|j| (final_states.column(j).norm() - 1.0).abs())
        .fold(0.0, f64::max);
    if norm_drift > NORM_TOLERANCE {
        return Err(Error::NormDrift(norm_drift));
    }
    let energy = block.energy(options.radius);
    Ok(EvolutionRun {
        system,
        level,
        path: path.clone(),
        options,
        energy,
        dynamical_phase: energy * t_total,
        initial,
        final_states,
        norm_drift,
        wall_time_s: start.elapsed().as_secs_f64(),
    })
}

/// Holonomy estimated from an evolution.
#[derive(Debug, Clone)]
pub struct HolonomyEstimate {
    /// e^{i∫E dt} ⟨i(x₀)|ψ_j(T)⟩, before unitarization.
    pub raw: CMat,
    pub w: CMat,
    pub leakage: f64,
}

/// W_est = polar(e^{i∫E dt} ⟨i(x₀)|ψ_j(T)⟩).
pub fn extract_holonomy(run: &EvolutionRun) -> Result<HolonomyEstimate> {
    let leakage = run.leakage();
    if leakage > LEAKAGE_TOLERANCE {
        return Err(Error::Leakage(leakage));
    }
    let phase = C64::from_polar(1.0, run.dynamical_phase);
    let raw = (dagger(&run.initial) * &run.final_states).map(|z| z * phase);
    Ok(HolonomyEstimate {
        w: polar_unitary(&raw),
        raw,
        leakage,
    })
}

/// JSON summary of an evolution compared against the Wilson loop.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct OracleComparison {
    pub system: System,
    pub level: Level,
    pub total_time: f64,
    /// Total time in units of 1/gap.
    pub total_time_gap_units: f64,
    pub steps: usize,
    pub schedule: Schedule,
    pub dynamical_phase: f64,
    pub norm_drift: f64,
    pub leakage: f64,
    pub w_oracle: MatrixParts,
    pub w_wilson: MatrixParts,
    /// ‖W_oracle − W_wilson‖ in operator norm.
    pub distance: f64,
    pub wall_time_s: f64,
}

pub fn compare_with_wilson(run: &EvolutionRun) -> Result<OracleComparison> {
    let est = extract_holonomy(run)?;
    let ev = FieldEvaluator::new(run.system, run.level)?;
    let wl = wilson_loop_adaptive(&ev, &run.path, DEFAULT_SEGMENTS, MAX_ADAPTIVE_SEGMENTS, FieldSource::Closed)?;
    let gap = run.system.level_block(run.level)?.gap(run.options.radius);
    Ok(OracleComparison {
        system: run.system,
        level: run.level,
        total_time: run.options.total_time,
        total_time_gap_units: run.options.total_time * gap,
        steps: run.options.steps,
        schedule: run.options.schedule,
        dynamical_phase: run.dynamical_phase,
        norm_drift: run.norm_drift,
        leakage: est.leakage,
        w_oracle: MatrixParts::from(&est.w),
        w_wilson: MatrixParts::from(&wl.w),
        distance: operator_norm(&(&est.w - &wl.w)),
        wall_time_s: run.wall_time_s,
    })
}

/// Evolves and compares for each total time (in units of 1/gap), in
/// parallel. Results keep the order of `times`.
pub fn oracle_sweep(
    system: System,
    level: Level,
    path: &LoopPath,
    times: &[f64],
    step_factor: f64,
) -> Result<Vec<OracleComparison>> {
    times
        .par_iter()
        .map(|&t| {
            let opts = EvolutionOptions::in_gap_units(system, level, t, step_factor)?;
            compare_with_wilson(&evolve(system, level, path, opts)?)
        })
        .collect()
}

/// True when each distance is below the previous one (up to `slack`).
pub fn is_monotone_decreasing(values: &[f64], slack: f64) -> bool {
    values.windows(2).all(|w| w[1] <= w[0] + slack)
}

/// Identity of the given size, the expected oracle result for a loop that
/// does not move.
pub fn trivial_estimate(dim: usize) -> CMat {
    identity(dim)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::holonomy::{wrap_phase, LoopShape};
    use crate::lie_algebra::Spin;
    use crate::linalg::{max_abs_diff, HermitianExp};
    use crate::parametrization::Manifold;

    fn random_hermitian(n: usize, seed: u64) -> CMat {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
        let m = CMat::from_fn(n, n, |_, _| C64::new(rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0)));
        (&m + m.adjoint()) * C64::new(0.5, 0.0)
    }

    #[test]
    fn constant_hamiltonian_is_exact() {
        let h = random_hermitian(4, 3);
        let psi0 = CMat::from_fn(4, 2, |i, j| C64::new((i + j) as f64, 1.0 - i as f64).unscale(4.0));
        let t = 37.3;
        let psi = propagate(|_| h.clone(), &psi0, t, 50);
        let exact = HermitianExp::new(&h).exp_i(-t) * &psi0;
        assert!(max_abs_diff(&psi, &exact) < 1e-8);
    }

    #[test]
    fn fourth_order_convergence() {
        let a = random_hermitian(3, 1);
        let b = random_hermitian(3, 2);
        let h = |t: f64| &a * C64::new(t.cos(), 0.0) + &b * C64::new((2.0 * t).sin(), 0.0);
        let psi0 = identity(3);
        let reference = propagate(h, &psi0, 2.0, 4096);
        let e1 = max_abs_diff(&propagate(h, &psi0, 2.0, 32), &reference);
        let e2 = max_abs_diff(&propagate(h, &psi0, 2.0, 64), &reference);
        let ratio = e1 / e2;
        assert!(ratio > 12.0 && ratio < 20.0, "error ratio {ratio}");
    }

    #[test]
    fn equator_oracle_phase() {
        let spin = Spin::from_twice(1).unwrap();
        let system = System::Su2Linear { spin };
        let level = Level::Projection { twice_m: 1 };
        let path = LoopPath::latitude(std::f64::consts::FRAC_PI_2).unwrap();
        let phase_error = |t| {
            let opts = EvolutionOptions::in_gap_units(system, level, t, 1.0).unwrap();
            let run = evolve(system, level, &path, opts).unwrap();
            let est = extract_holonomy(&run).unwrap();
            (wrap_phase(est.w[(0, 0)].arg() + std::f64::consts::PI).abs(), est)
        };
        // The residual is the second-order energy shift, ≈ 1.48/T here.
        let (e3, _) = phase_error(1e3);
        let (e4, est) = phase_error(1e4);
        assert!(e3 < 2e-2 && e4 < 5e-3, "{e3} {e4}");
        assert!((e3 / e4 - 10.0).abs() < 0.1);
        assert!(est.raw[(0, 0)].norm() > 1.0 - 1e-6);
    }

    #[test]
    fn stationary_loop_gives_identity() {
        let system = System::Su3Adjoint;
        let level = Level::Zero;
        let path = LoopPath::new(LoopShape::PlaneLoop {
            manifold: Manifold::CP2,
            axes: [0, 3],
            center: vec![1.0, 0.4, 0.2, 2.0],
            radii: [0.0, 0.0],
        })
        .unwrap();
        let opts = EvolutionOptions::in_gap_units(system, level, 50.0, 1.0).unwrap();
        let run = evolve(system, level, &path, opts).unwrap();
        let est = extract_holonomy(&run).unwrap();
        assert!(max_abs_diff(&est.w, &identity(4)) < 1e-8);
    }

    #[test]
    fn rejects_too_few_steps() {
        let system = System::Su3Degenerate;
        let path = LoopPath::new(LoopShape::CoordinateCircle {
            manifold: Manifold::CP2,
            axis: 2,
            base: vec![1.0, 0.0, 0.0, 1.0],
        })
        .unwrap();
        let opts = EvolutionOptions {
            total_time: 100.0,
            steps: 10,
            radius: 1.0,
            schedule: Schedule::Smooth,
        };
        assert!(matches!(evolve(system, Level::E1, &path, opts), Err(Error::TooFewSteps { .. })));
    }
}
