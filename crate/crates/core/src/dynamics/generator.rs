use serde::{Deserialize, Serialize};

use crate::fock::{
    build_hamiltonian_rotating, build_hamiltonian_simple, lab_hamiltonian_parts, mode_annihilation,
    simple_lab_hamiltonian_parts,
};
use crate::linalg::CMatrix;
use crate::params::ModelParams;
use crate::system::{CompositeSystem, ModeId};
use crate::{Error, Result, C64};

/// Reference frame the Hamiltonian is written in.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Frame {
    /// Explicitly time-dependent drive at `ω_f`.
    Lab,
    /// Co-rotating with the drive; time-independent.
    Rotating,
}

/// How the finite-temperature bath enters the master equation.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum ThermalDissipator {
    /// `γ(N+1) D[a] + γN D[a†]`: decay plus thermal excitation.
    #[default]
    Physical,
    /// `γ(N+1) D[a] + γN D[a]`: both terms as decay, which has no thermal
    /// fixed point. Kept only to compare against.
    AsPrinted,
}

/// Hamiltonian of a generator, either fixed or periodically driven.
#[derive(Debug, Clone)]
pub enum Hamiltonian {
    Static(CMatrix),
    /// `H(t) = base + e^{iωt} drive + e^{−iωt} drive†`
    Periodic {
        base: CMatrix,
        drive: CMatrix,
        frequency: f64,
    },
}

impl Hamiltonian {
    pub fn dim(&self) -> usize {
        match self {
            Hamiltonian::Static(h) => h.rows(),
            Hamiltonian::Periodic { base, .. } => base.rows(),
        }
    }

    pub fn at(&self, t: f64) -> CMatrix {
        match self {
            Hamiltonian::Static(h) => h.clone(),
            Hamiltonian::Periodic {
                base,
                drive,
                frequency,
            } => {
                let phase = C64::from_polar(1.0, frequency * t);
                let mut h = base.clone();
                h.axpy(phase, drive);
                h.axpy(phase.conj(), &drive.dagger());
                h
            }
        }
    }
}

/// One dissipator `rate · (LρL† − ½{L†L, ρ})`.
#[derive(Debug, Clone)]
pub struct Collapse {
    pub op: CMatrix,
    pub rate: f64,
}

/// Right-hand side of a GKSL master equation.
#[derive(Debug, Clone)]
pub struct LindbladGenerator {
    hamiltonian: Hamiltonian,
    collapses: Vec<Collapse>,
}

impl LindbladGenerator {
    pub fn new(hamiltonian: Hamiltonian, collapses: Vec<Collapse>) -> Result<Self> {
        let dim = hamiltonian.dim();
        let square = |m: &CMatrix| m.shape() == (dim, dim);
        let ok = match &hamiltonian {
            Hamiltonian::Static(h) => square(h),
            Hamiltonian::Periodic { base, drive, .. } => square(base) && square(drive),
        };
        if !ok {
            return Err(Error::DimensionMismatch {
                expected: dim,
                found: 0,
            });
        }
        for c in &collapses {
            if !(c.rate >= 0.0) || !c.rate.is_finite() {
                return Err(Error::InvalidParameter(format!(
                    "collapse rate must be finite and >= 0, got {}",
                    c.rate
                )));
            }
            if !square(&c.op) {
                return Err(Error::DimensionMismatch {
                    expected: dim,
                    found: c.op.rows(),
                });
            }
        }
        Ok(Self {
            hamiltonian,
            collapses,
        })
    }

    /// Driven charger coupled to a battery, both damped into a common bath
    /// at occupation `params.n_thermal`.
    pub fn charger_battery(
        params: &ModelParams,
        system: &CompositeSystem,
        frame: Frame,
        dissipator: ThermalDissipator,
    ) -> Result<Self> {
        params.validate()?;
        let hamiltonian = match frame {
            Frame::Rotating => Hamiltonian::Static(build_hamiltonian_rotating(params, system)?),
            Frame::Lab => {
                let (base, drive) = lab_hamiltonian_parts(params, system)?;
                Hamiltonian::Periodic {
                    base,
                    drive,
                    frequency: params.omega_f,
                }
            }
        };
        let mut collapses = thermal_collapses(
            &mode_annihilation(system, ModeId::CHARGER)?,
            params.gamma_a,
            params.n_thermal,
            dissipator,
        );
        collapses.extend(thermal_collapses(
            &mode_annihilation(system, ModeId::BATTERY)?,
            params.gamma_b,
            params.n_thermal,
            dissipator,
        ));
        Self::new(hamiltonian, collapses)
    }

    /// A single driven, damped oscillator (damping rate `gamma_A`).
    pub fn single_oscillator(
        params: &ModelParams,
        system: &CompositeSystem,
        frame: Frame,
        dissipator: ThermalDissipator,
    ) -> Result<Self> {
        params.validate()?;
        let hamiltonian = match frame {
            Frame::Rotating => Hamiltonian::Static(build_hamiltonian_simple(params, system)?),
            Frame::Lab => {
                let (base, drive) = simple_lab_hamiltonian_parts(params, system)?;
                Hamiltonian::Periodic {
                    base,
                    drive,
                    frequency: params.omega_f,
                }
            }
        };
        let a = mode_annihilation(system, ModeId::CHARGER)?;
        Self::new(
            hamiltonian,
            thermal_collapses(&a, params.gamma_a, params.n_thermal, dissipator),
        )
    }

    pub fn hamiltonian(&self) -> &Hamiltonian {
        &self.hamiltonian
    }

    pub fn collapses(&self) -> &[Collapse] {
        &self.collapses
    }

    pub fn dim(&self) -> usize {
        self.hamiltonian.dim()
    }
}

/// Bath terms for one damped mode. Zero-rate terms are dropped.
pub fn thermal_collapses(
    a: &CMatrix,
    gamma: f64,
    n_thermal: f64,
    dissipator: ThermalDissipator,
) -> Vec<Collapse> {
    let mut out = Vec::new();
    if gamma == 0.0 {
        return out;
    }
    out.push(Collapse {
        op: a.clone(),
        rate: gamma * (n_thermal + 1.0),
    });
    if n_thermal > 0.0 {
        let op = match dissipator {
            ThermalDissipator::Physical => a.dagger(),
            ThermalDissipator::AsPrinted => a.clone(),
        };
        out.push(Collapse {
            op,
            rate: gamma * n_thermal,
        });
    }
    out
}
