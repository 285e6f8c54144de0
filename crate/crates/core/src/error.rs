use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("matrix is not square ({rows}x{cols})")]
    NotSquare { rows: usize, cols: usize },
    #[error("matrix is not Hermitian (defect {defect:e})")]
    NotHermitian { defect: f64 },
    #[error("Jacobi iteration did not converge in {sweeps} sweeps")]
    NoConvergence { sweeps: usize },
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("unknown mode `{0}`")]
    UnknownMode(&'static str),
    #[error("invalid system: {0}")]
    InvalidSystem(String),
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("invalid density matrix: {0}")]
    InvalidState(String),
    #[error("truncation too small: {0}")]
    TruncationInadequate(String),
    #[error("Fock truncation overflow at t = {time}: top level of mode {mode} holds population {population:e}")]
    TruncationOverflow {
        time: f64,
        mode: &'static str,
        population: f64,
    },
    #[error("trace drift {drift:e} at t = {time} exceeds tolerance")]
    TraceDrift { time: f64, drift: f64 },
    #[error("closed form outside its domain: {0}")]
    Domain(String),
}

pub type Result<T> = std::result::Result<T, Error>;
