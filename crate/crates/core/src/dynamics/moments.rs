//! Exact first/second-moment propagation for the charger–battery pair.
//!
//! The model is linear with a phase-insensitive bath, so the state stays
//! Gaussian and is fixed by the means `⟨v⟩`, `v = (a, b)`, and the normal-ordered
//! second moments `N_ij = ⟨v_i† v_j⟩`. With `d⟨v⟩/dt = M⟨v⟩ + f` the centred part
//! `C = N − ⟨v⟩*⟨v⟩ᵀ` obeys `dC/dt = M* C + C Mᵀ + diag(injection)`, which is
//! what is integrated: it keeps `N − |⟨v⟩|²` exactly zero at zero temperature.

use std::ops::{Add, Mul};

use crate::dynamics::evolve::EvolveConfig;
use crate::dynamics::generator::ThermalDissipator;
use crate::dynamics::trajectory::{Record, Trajectory};
use crate::params::ModelParams;
use crate::{Error, Result, C64};

const I: C64 = C64::new(0.0, 1.0);
const ZERO: C64 = C64::new(0.0, 0.0);

/// Gaussian state (or its time derivative) of the two modes.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MomentState {
    /// `(⟨a⟩, ⟨b⟩)`
    pub mean: [C64; 2],
    /// Centred normal-ordered moments `⟨δv_i† δv_j⟩`.
    pub fluct: [[C64; 2]; 2],
}

impl MomentState {
    pub fn vacuum() -> Self {
        Self {
            mean: [ZERO; 2],
            fluct: [[ZERO; 2]; 2],
        }
    }

    pub fn coherent(alpha_a: C64, alpha_b: C64) -> Self {
        Self {
            mean: [alpha_a, alpha_b],
            ..Self::vacuum()
        }
    }

    /// Displaced thermal product state.
    pub fn displaced_thermal(mean: [C64; 2], n_a: f64, n_b: f64) -> Self {
        Self {
            mean,
            fluct: [[C64::new(n_a, 0.0), ZERO], [ZERO, C64::new(n_b, 0.0)]],
        }
    }

    pub fn mean_a(&self) -> C64 {
        self.mean[0]
    }

    pub fn mean_b(&self) -> C64 {
        self.mean[1]
    }

    /// Normal-ordered second moment `⟨v_i† v_j⟩`.
    pub fn occ(&self, i: usize, j: usize) -> C64 {
        self.fluct[i][j] + self.mean[i].conj() * self.mean[j]
    }

    pub fn occ_matrix(&self) -> [[C64; 2]; 2] {
        [[self.occ(0, 0), self.occ(0, 1)], [self.occ(1, 0), self.occ(1, 1)]]
    }

    /// Checks that the moments describe a physical state.
    pub fn validate(&self) -> Result<()> {
        let herm = (self.fluct[0][1] - self.fluct[1][0].conj()).norm();
        if herm > 1e-9 || self.fluct[0][0].im.abs() > 1e-9 || self.fluct[1][1].im.abs() > 1e-9 {
            return Err(Error::InvalidState("second moments are not Hermitian".into()));
        }
        for i in 0..2 {
            if self.occ(i, i).re < self.mean[i].norm_sqr() - 1e-9 {
                return Err(Error::InvalidState(format!(
                    "mode {i}: occupation below |mean|²"
                )));
            }
        }
        Ok(())
    }

    fn to_array(self) -> [C64; 6] {
        let [m0, m1] = self.mean;
        let [[c00, c01], [c10, c11]] = self.fluct;
        [m0, m1, c00, c01, c10, c11]
    }

    fn from_array(x: [C64; 6]) -> Self {
        Self {
            mean: [x[0], x[1]],
            fluct: [[x[2], x[3]], [x[4], x[5]]],
        }
    }

    fn symmetrize(&mut self) {
        let off = (self.fluct[0][1] + self.fluct[1][0].conj()) * 0.5;
        self.fluct[0][1] = off;
        self.fluct[1][0] = off.conj();
        self.fluct[0][0].im = 0.0;
        self.fluct[1][1].im = 0.0;
    }
}

impl Add for MomentState {
    type Output = MomentState;

    fn add(self, rhs: MomentState) -> MomentState {
        let (a, b) = (self.to_array(), rhs.to_array());
        MomentState::from_array(std::array::from_fn(|k| a[k] + b[k]))
    }
}

impl Mul<f64> for MomentState {
    type Output = MomentState;

    fn mul(self, s: f64) -> MomentState {
        MomentState::from_array(self.to_array().map(|x| x * s))
    }
}

/// Net damping `κ` and thermal injection per mode for a bath form.
fn bath_rates(gamma: f64, n_thermal: f64, form: ThermalDissipator) -> (f64, f64) {
    match form {
        ThermalDissipator::Physical => (gamma, gamma * n_thermal),
        ThermalDissipator::AsPrinted => (gamma * (2.0 * n_thermal + 1.0), 0.0),
    }
}

/// Time derivative of the moments in the frame rotating with the drive.
///
/// `d⟨a⟩/dt = −iδ⟨a⟩ − ig⟨b⟩ − (γ_A/2)⟨a⟩ − iF`,
/// `d⟨b⟩/dt = −iδ⟨b⟩ − ig⟨a⟩ − (γ_B/2)⟨b⟩`.
pub fn moment_rhs(m: &MomentState, params: &ModelParams, form: ThermalDissipator) -> MomentState {
    let delta = params.delta();
    let g = params.g;
    let (kappa_a, inj_a) = bath_rates(params.gamma_a, params.n_thermal, form);
    let (kappa_b, inj_b) = bath_rates(params.gamma_b, params.n_thermal, form);
    let drift = [
        [-I * delta - kappa_a / 2.0, -I * g],
        [-I * g, -I * delta - kappa_b / 2.0],
    ];
    let force = [-I * params.drive, ZERO];

    let mean = std::array::from_fn(|i| drift[i][0] * m.mean[0] + drift[i][1] * m.mean[1] + force[i]);
    let injection = [inj_a, inj_b];
    let c = &m.fluct;
    let fluct = std::array::from_fn(|i| {
        std::array::from_fn(|j| {
            let mut s = ZERO;
            for k in 0..2 {
                s += drift[i][k].conj() * c[k][j] + c[i][k] * drift[j][k];
            }
            if i == j {
                s += injection[i];
            }
            s
        })
    });
    MomentState { mean, fluct }
}

/// Energy rows for a moment state. Ergotropy uses the displaced-thermal form
/// `ω₀ |⟨b⟩|²`, valid because the dynamics keeps the state Gaussian and
/// phase-insensitive.
pub fn moment_record(m: &MomentState, omega0: f64) -> Record {
    Record {
        e_a: omega0 * m.occ(0, 0).re,
        e_b: omega0 * m.occ(1, 1).re,
        ergotropy_b: crate::observables::moment_ergotropy(m, omega0),
        abs_mean_a_sq: m.mean[0].norm_sqr(),
        abs_mean_b_sq: m.mean[1].norm_sqr(),
        trace_err: 0.0,
        top_pop_a: 0.0,
        top_pop_b: 0.0,
    }
}

/// RK4 integration of [`moment_rhs`] under the same stepping contract as `evolve`.
pub fn evolve_moments(
    m0: &MomentState,
    params: &ModelParams,
    form: ThermalDissipator,
    config: &EvolveConfig,
) -> Result<(MomentState, Trajectory)> {
    params.validate()?;
    m0.validate()?;
    let n_steps = config.steps()?;
    let h = config.dt;
    let f = |m: &MomentState| moment_rhs(m, params, form);
    let mut m = *m0;
    let mut traj = Trajectory::new();
    for step in 0..=n_steps {
        if config.records_at(step, n_steps) {
            traj.push(config.time(step), moment_record(&m, config.omega0));
        }
        if step == n_steps {
            break;
        }
        let k1 = f(&m);
        let k2 = f(&(m + k1 * (0.5 * h)));
        let k3 = f(&(m + k2 * (0.5 * h)));
        let k4 = f(&(m + k3 * h));
        m = m + (k1 + k2 * 2.0 + k3 * 2.0 + k4) * (h / 6.0);
        m.symmetrize();
    }
    Ok((m, traj))
}
