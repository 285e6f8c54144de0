use crate::linalg::{hermitian_eigenvalues, CMatrix};
use crate::system::CompositeSystem;
use crate::{Error, Result};

pub const HERMITIAN_TOL: f64 = 1e-10;
pub const TRACE_TOL: f64 = 1e-8;
pub const POSITIVITY_TOL: f64 = 1e-8;

/// A density matrix together with the mode structure it lives on.
#[derive(Debug, Clone)]
pub struct DensityState {
    rho: CMatrix,
    system: CompositeSystem,
}

impl DensityState {
    /// Validates Hermiticity, unit trace and positivity before accepting `rho`.
    pub fn new(rho: CMatrix, system: CompositeSystem) -> Result<Self> {
        let state = Self::new_unchecked(rho, system)?;
        state.validate()?;
        Ok(state)
    }

    /// Only checks the shape.
    pub fn new_unchecked(rho: CMatrix, system: CompositeSystem) -> Result<Self> {
        let dim = system.dim();
        if rho.shape() != (dim, dim) {
            return Err(Error::DimensionMismatch {
                expected: dim,
                found: rho.rows(),
            });
        }
        Ok(Self { rho, system })
    }

    pub fn validate(&self) -> Result<()> {
        let defect = self.rho.hermiticity_defect();
        if defect > HERMITIAN_TOL {
            return Err(Error::InvalidState(format!("not Hermitian (defect {defect:e})")));
        }
        let err = self.trace_error();
        if err > TRACE_TOL {
            return Err(Error::InvalidState(format!("trace deviates from 1 by {err:e}")));
        }
        let min = self.min_eigenvalue()?;
        if min < -POSITIVITY_TOL {
            return Err(Error::InvalidState(format!("negative eigenvalue {min:e}")));
        }
        Ok(())
    }

    pub fn rho(&self) -> &CMatrix {
        &self.rho
    }

    pub fn system(&self) -> &CompositeSystem {
        &self.system
    }

    pub fn into_parts(self) -> (CMatrix, CompositeSystem) {
        (self.rho, self.system)
    }

    pub fn trace_error(&self) -> f64 {
        (self.rho.trace() - 1.0).norm()
    }

    pub fn min_eigenvalue(&self) -> Result<f64> {
        let mut r = self.rho.clone();
        r.hermitize();
        Ok(hermitian_eigenvalues(&r)?[0])
    }
}
