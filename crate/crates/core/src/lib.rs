//! Simulation of a coherently driven quantum-harmonic-oscillator battery.
//!
//! A driven, damped charger oscillator (mode A) exchanges excitations with a
//! battery oscillator (mode B). The crate integrates the GKSL master equation
//! on a truncated Fock space, propagates the exact Gaussian moments of the
//! same model, computes stored energy and ergotropy, and evaluates the
//! closed-form energy curves the numerics are checked against.
//!
//! Tensor order is always charger ⊗ battery. Frequencies, rates and energies
//! are in units of the bare oscillator frequency ω₀.

pub mod analytics;
pub mod dynamics;
mod error;
pub mod fock;
pub mod linalg;
pub mod observables;
mod params;
mod state;
mod system;

pub use num_complex::Complex64 as C64;

pub use analytics::{ClosedForm, ClosedFormCoefficients};
pub use dynamics::{
    evolve, evolve_moments, EvolveConfig, Frame, LindbladGenerator, MomentState, Record,
    ThermalDissipator, Trajectory,
};
pub use error::{Error, Result};
pub use linalg::{CMatrix, HermitianEig};
pub use observables::PassiveDecomposition;
pub use params::ModelParams;
pub use state::DensityState;
pub use system::{CompositeSystem, ModeId};
