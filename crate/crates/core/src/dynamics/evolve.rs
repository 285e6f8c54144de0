use crate::dynamics::lindblad::CompiledGenerator;
use crate::dynamics::trajectory::{Record, Trajectory};
use crate::dynamics::LindbladGenerator;
use crate::linalg::CMatrix;
use crate::observables::{annihilation_expectation, number_expectation, reduced_state, single_mode_ergotropy};
use crate::state::DensityState;
use crate::system::ModeId;
use crate::{Error, Result};

/// Fixed-step integration settings shared by both engines.
#[derive(Debug, Clone, PartialEq)]
pub struct EvolveConfig {
    pub t_start: f64,
    pub t_end: f64,
    pub dt: f64,
    /// Record every `record_stride` steps (the final step is always recorded).
    pub record_stride: usize,
    /// Energy unit for recorded energies.
    pub omega0: f64,
    /// Abort when the highest Fock level of any mode holds more than this.
    pub top_population_limit: f64,
    /// Abort when `|tr ρ − 1|` exceeds this.
    pub trace_tolerance: f64,
    /// Compute `λ_min(ρ)` every this many records (`None` to skip).
    pub positivity_stride: Option<usize>,
}

impl Default for EvolveConfig {
    fn default() -> Self {
        Self {
            t_start: 0.0,
            t_end: 1.0,
            dt: 0.01,
            record_stride: 10,
            omega0: 1.0,
            top_population_limit: 1e-4,
            trace_tolerance: 1e-6,
            positivity_stride: None,
        }
    }
}

impl EvolveConfig {
    pub fn span(t_start: f64, t_end: f64, dt: f64) -> Self {
        Self {
            t_start,
            t_end,
            dt,
            ..Default::default()
        }
    }

    pub fn with_stride(mut self, record_stride: usize) -> Self {
        self.record_stride = record_stride;
        self
    }

    /// Number of steps; `t_end − t_start` must be a whole number of `dt`.
    pub fn steps(&self) -> Result<usize> {
        if !(self.dt > 0.0) || !self.dt.is_finite() {
            return Err(Error::InvalidParameter(format!("dt must be > 0, got {}", self.dt)));
        }
        if self.record_stride == 0 {
            return Err(Error::InvalidParameter("record_stride must be >= 1".into()));
        }
        let span = self.t_end - self.t_start;
        if !(span >= 0.0) || !span.is_finite() {
            return Err(Error::InvalidParameter(format!(
                "time span [{}, {}] is empty",
                self.t_start, self.t_end
            )));
        }
        let n = (span / self.dt).round();
        if (n * self.dt - span).abs() > 1e-9 * span.max(1.0) {
            return Err(Error::InvalidParameter(format!(
                "span {span} is not a multiple of dt = {}",
                self.dt
            )));
        }
        Ok(n as usize)
    }

    pub(crate) fn time(&self, step: usize) -> f64 {
        self.t_start + step as f64 * self.dt
    }

    pub(crate) fn records_at(&self, step: usize, n_steps: usize) -> bool {
        step % self.record_stride == 0 || step == n_steps
    }
}

struct TopLevels {
    mode: &'static str,
    indices: Vec<usize>,
}

fn top_level_indices(state: &DensityState) -> Vec<TopLevels> {
    let sys = state.system();
    sys.modes()
        .iter()
        .map(|&(id, d)| TopLevels {
            mode: id.0,
            indices: (0..sys.dim())
                .filter(|&i| sys.occupation(i, id).expect("mode exists") == d - 1)
                .collect(),
        })
        .collect()
}

fn population(rho: &CMatrix, indices: &[usize]) -> f64 {
    indices.iter().map(|&i| rho[(i, i)].re).sum()
}

/// Observables of a density matrix; battery columns are zero without a battery mode.
pub fn density_record(state: &DensityState, omega0: f64) -> Result<Record> {
    let sys = state.system();
    let rho_a = reduced_state(state, ModeId::CHARGER)?;
    let mut row = Record {
        e_a: omega0 * number_expectation(&rho_a),
        abs_mean_a_sq: annihilation_expectation(&rho_a).norm_sqr(),
        trace_err: state.trace_error(),
        top_pop_a: rho_a[(rho_a.rows() - 1, rho_a.rows() - 1)].re,
        ..Default::default()
    };
    if sys.contains(ModeId::BATTERY) {
        let rho_b = reduced_state(state, ModeId::BATTERY)?;
        row.e_b = omega0 * number_expectation(&rho_b);
        row.abs_mean_b_sq = annihilation_expectation(&rho_b).norm_sqr();
        row.ergotropy_b = single_mode_ergotropy(&rho_b, omega0)?;
        row.top_pop_b = rho_b[(rho_b.rows() - 1, rho_b.rows() - 1)].re;
    }
    Ok(row)
}

/// Classic fixed-step RK4 for the full density matrix.
///
/// The state is re-symmetrised after every step. Fails on trace drift beyond
/// `trace_tolerance` or when any top Fock level exceeds `top_population_limit`.
pub fn evolve(
    state: &DensityState,
    generator: &LindbladGenerator,
    config: &EvolveConfig,
) -> Result<(DensityState, Trajectory)> {
    let n_steps = config.steps()?;
    let dim = state.system().dim();
    if generator.dim() != dim {
        return Err(Error::DimensionMismatch {
            expected: dim,
            found: generator.dim(),
        });
    }
    let system = state.system().clone();
    let tops = top_level_indices(state);
    let mut compiled = CompiledGenerator::new(generator);

    let mut rho = state.rho().clone();
    rho.hermitize();
    let mut k1 = CMatrix::zeros(dim, dim);
    let mut k2 = CMatrix::zeros(dim, dim);
    let mut k3 = CMatrix::zeros(dim, dim);
    let mut k4 = CMatrix::zeros(dim, dim);
    let mut stage = CMatrix::zeros(dim, dim);
    let h = config.dt;

    let mut traj = Trajectory::new();
    let mut n_records = 0usize;
    for step in 0..=n_steps {
        let t = config.time(step);
        let drift = (rho.trace() - 1.0).norm();
        if drift > config.trace_tolerance {
            return Err(Error::TraceDrift { time: t, drift });
        }
        for top in &tops {
            let p = population(&rho, &top.indices);
            if p > config.top_population_limit {
                return Err(Error::TruncationOverflow {
                    time: t,
                    mode: top.mode,
                    population: p,
                });
            }
        }
        if config.records_at(step, n_steps) {
            let current = DensityState::new_unchecked(rho.clone(), system.clone())?;
            traj.push(t, density_record(&current, config.omega0)?);
            if let Some(every) = config.positivity_stride {
                if every > 0 && (n_records % every == 0 || step == n_steps) {
                    traj.min_eigenvalues.push((t, current.min_eigenvalue()?));
                }
            }
            n_records += 1;
        }
        if step == n_steps {
            break;
        }

        compiled.apply(&rho, t, &mut k1);
        stage_into(&mut stage, &rho, 0.5 * h, &k1);
        compiled.apply(&stage, t + 0.5 * h, &mut k2);
        stage_into(&mut stage, &rho, 0.5 * h, &k2);
        compiled.apply(&stage, t + 0.5 * h, &mut k3);
        stage_into(&mut stage, &rho, h, &k3);
        compiled.apply(&stage, t + h, &mut k4);
        let w = h / 6.0;
        for ((((r, a), b), c), d) in rho
            .as_mut_slice()
            .iter_mut()
            .zip(k1.as_slice())
            .zip(k2.as_slice())
            .zip(k3.as_slice())
            .zip(k4.as_slice())
        {
            *r += (a + (b + c) * 2.0 + d) * w;
        }
        rho.hermitize();
    }
    Ok((DensityState::new_unchecked(rho, system)?, traj))
}

// stage = base + s * k
fn stage_into(stage: &mut CMatrix, base: &CMatrix, s: f64, k: &CMatrix) {
    for ((o, &b), &x) in stage
        .as_mut_slice()
        .iter_mut()
        .zip(base.as_slice())
        .zip(k.as_slice())
    {
        *o = b + x * s;
    }
}
