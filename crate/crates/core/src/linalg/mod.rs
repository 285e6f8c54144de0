//! Dense complex linear algebra.

mod eig;
mod matrix;
mod partial_trace;
mod sparse;

pub use eig::{hermitian_eig, hermitian_eigenvalues, HermitianEig, HERMITIAN_TOL};
pub use matrix::{dagger, kron, CMatrix};
pub use partial_trace::partial_trace;
pub use sparse::SparseOp;
