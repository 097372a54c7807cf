//! Adiabatic (Berry) gauge fields of SU(2) and SU(3) quantum systems.
//!
//! The crate builds eigenframes of spin and three-level Hamiltonians over
//! their parameter manifolds (S², CP² and the flag manifold), evaluates the
//! induced connections and curvatures both in closed form and by finite
//! differences, integrates first and second Chern numbers, computes Wilson
//! loops, and checks those loops against direct Schrödinger evolution.
//!
//! Start with [`gauge_field::FieldEvaluator`], [`topology::report`],
//! [`holonomy::wilson_loop`] and [`verify::verify`].

pub mod cli;
pub mod dynamics;
pub mod error;
pub mod gauge_field;
pub mod geometry;
pub mod holonomy;
pub mod lie_algebra;
pub mod linalg;
pub mod parametrization;
pub mod quadrature;
pub mod topology;
pub mod verify;

pub use error::{Error, Result};
