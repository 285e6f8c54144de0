//! Stored energy, ergotropy and passive states.

use crate::dynamics::MomentState;
use crate::linalg::{hermitian_eigenvalues, partial_trace, CMatrix};
use crate::state::DensityState;
use crate::system::ModeId;
use crate::{Error, Result, C64};

/// Passive rearrangement of a state: largest population in the lowest level.
#[derive(Debug, Clone, PartialEq)]
pub struct PassiveDecomposition {
    /// Eigenvalues of the state, descending.
    pub populations: Vec<f64>,
    /// Level energies, ascending.
    pub level_energies: Vec<f64>,
    /// `Σ λ_i ε_i`
    pub passive_energy: f64,
}

/// Anything that can report the battery's mean energy.
pub trait StoredEnergy {
    /// `ω₀ ⟨b†b⟩`
    fn battery_energy(&self, omega0: f64) -> Result<f64>;
}

impl StoredEnergy for DensityState {
    fn battery_energy(&self, omega0: f64) -> Result<f64> {
        Ok(omega0 * mode_occupation(self, ModeId::BATTERY)?)
    }
}

impl StoredEnergy for MomentState {
    fn battery_energy(&self, omega0: f64) -> Result<f64> {
        Ok(omega0 * self.occ(1, 1).re)
    }
}

/// `ω₀ ⟨b†b⟩` for either engine's state.
pub fn battery_energy<S: StoredEnergy + ?Sized>(state: &S, omega0: f64) -> Result<f64> {
    state.battery_energy(omega0)
}

/// Reduced density matrix of one mode.
pub fn reduced_state(state: &DensityState, mode: ModeId) -> Result<CMatrix> {
    partial_trace(state.rho(), state.system(), mode)
}

/// `⟨n⟩` of a single-mode density matrix.
pub fn number_expectation(rho: &CMatrix) -> f64 {
    rho.diagonal().iter().enumerate().map(|(n, p)| n as f64 * p.re).sum()
}

/// `tr(ρ a)` of a single-mode density matrix.
pub fn annihilation_expectation(rho: &CMatrix) -> C64 {
    (1..rho.rows()).map(|n| rho[(n, n - 1)] * (n as f64).sqrt()).sum()
}

/// `⟨a†a⟩` for the named mode.
pub fn mode_occupation(state: &DensityState, mode: ModeId) -> Result<f64> {
    Ok(number_expectation(&reduced_state(state, mode)?))
}

/// `⟨a⟩` for the named mode.
pub fn first_moment(state: &DensityState, mode: ModeId) -> Result<C64> {
    Ok(annihilation_expectation(&reduced_state(state, mode)?))
}

/// Population of the highest retained Fock level of `mode`.
pub fn top_level_population(state: &DensityState, mode: ModeId) -> Result<f64> {
    let r = reduced_state(state, mode)?;
    let d = r.rows();
    Ok(r[(d - 1, d - 1)].re)
}

/// Most negative eigenvalue accepted by [`passive_state`]; integrated states
/// carry rounding-level negativity of this order.
pub const NEGATIVITY_TOL: f64 = 1e-7;

/// Pairs descending eigenvalues of `rho` with ascending `level_energies`.
pub fn passive_state(rho: &CMatrix, level_energies: &[f64]) -> Result<PassiveDecomposition> {
    if !rho.is_square() {
        return Err(Error::NotSquare {
            rows: rho.rows(),
            cols: rho.cols(),
        });
    }
    if level_energies.len() != rho.rows() {
        return Err(Error::DimensionMismatch {
            expected: rho.rows(),
            found: level_energies.len(),
        });
    }
    let tr = rho.trace();
    if (tr - 1.0).norm() > 1e-8 {
        return Err(Error::InvalidState(format!("trace {tr} is not 1")));
    }
    let mut values = hermitian_eigenvalues(rho)?;
    if values[0] < -NEGATIVITY_TOL {
        return Err(Error::InvalidState(format!("negative eigenvalue {:e}", values[0])));
    }
    values.reverse();
    let mut energies = level_energies.to_vec();
    energies.sort_by(f64::total_cmp);
    let passive_energy = values.iter().zip(&energies).map(|(l, e)| l * e).sum();
    Ok(PassiveDecomposition {
        populations: values,
        level_energies: energies,
        passive_energy,
    })
}

/// Ergotropy of a single oscillator state with levels `ε_n = ω₀ n`.
pub fn single_mode_ergotropy(rho: &CMatrix, omega0: f64) -> Result<f64> {
    let mut r = rho.clone();
    r.hermitize();
    let levels: Vec<f64> = (0..r.rows()).map(|n| omega0 * n as f64).collect();
    let passive = passive_state(&r, &levels)?;
    let energy = omega0 * number_expectation(&r);
    // 0 ≤ W ≤ E holds exactly for a density matrix; clamp rounding residue
    // from slightly negative integrated eigenvalues.
    Ok((energy - passive.passive_energy).clamp(0.0, energy.max(0.0)))
}

/// Work extractable from the battery by cyclic unitaries: `E_B − ω₀ Σ λ_i i`.
pub fn ergotropy(state: &DensityState, omega0: f64) -> Result<f64> {
    single_mode_ergotropy(&reduced_state(state, ModeId::BATTERY)?, omega0)
}

/// Ergotropy of a Gaussian battery state: `ω₀ (N_bb − n̄_eff)` with
/// `n̄_eff = N_bb − |⟨b⟩|²`, i.e. the displacement energy.
pub fn moment_ergotropy(m: &MomentState, omega0: f64) -> f64 {
    let occ = m.occ(1, 1).re;
    let n_eff = occ - m.mean_b().norm_sqr();
    omega0 * (occ - n_eff)
}
