//! Time evolution: master-equation integration and moment propagation.

mod evolve;
mod generator;
mod lindblad;
mod moments;
mod trajectory;

pub use evolve::{density_record, evolve, EvolveConfig};
pub use generator::{thermal_collapses, Collapse, Frame, Hamiltonian, LindbladGenerator, ThermalDissipator};
pub use lindblad::lindblad_rhs;
pub use moments::{evolve_moments, moment_record, moment_rhs, MomentState};
pub use trajectory::{Record, Trajectory};
