//! Deviation of simulated energy curves from the closed forms.

use anyhow::{bail, ensure, Result};
use qho_battery::{ClosedForm, ModelParams, Trajectory};
use serde::Serialize;

use crate::config::{Model, ScenarioConfig, SweepPoint};

/// Deviation of one trajectory from one closed form.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CurveDeviation {
    pub point: usize,
    pub label: String,
    /// Compared column (`E_A` for single-oscillator forms, else `E_B`).
    pub observable: &'static str,
    pub samples: usize,
    pub max_abs_deviation: f64,
    /// `max_abs_deviation` over the peak of the simulated curve in the window.
    pub relative_to_peak: f64,
    pub worst_time: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ComparisonReport {
    pub scenario: String,
    pub form: String,
    pub description: &'static str,
    pub curves: Vec<CurveDeviation>,
}

impl ComparisonReport {
    pub fn new(scenario: &str, form: ClosedForm, curves: Vec<CurveDeviation>) -> Self {
        Self {
            scenario: scenario.to_string(),
            form: form.id().to_string(),
            description: form.description(),
            curves,
        }
    }

    /// Largest relative-to-peak deviation over all curves.
    pub fn worst_relative(&self) -> f64 {
        self.curves.iter().map(|c| c.relative_to_peak).fold(0.0, f64::max)
    }
}

/// Compares on the trajectory's own time grid. Forms for the drive-on phase
/// use `t ≤ τ`; the self-discharge form uses `t ≥ τ` with time measured from
/// switch-off.
pub fn compare_trajectory(
    form: ClosedForm,
    cfg: &ScenarioConfig,
    point: &SweepPoint,
    params: &ModelParams,
    traj: &Trajectory,
) -> Result<CurveDeviation> {
    let model = point.config.scenario.model;
    let wanted = if form.is_single_oscillator() {
        Model::Simple
    } else {
        Model::Coupled
    };
    ensure!(
        model == wanted,
        "{form} describes the {wanted:?} model but scenario `{}` uses {model:?}",
        cfg.scenario.id
    );
    let tau = point.config.protocol.switch_off();
    if form == ClosedForm::Eq20 && tau.is_none() {
        bail!("{form} needs protocol.kind = \"charge_then_discharge\"");
    }
    let observable = if form.is_single_oscillator() { "E_A" } else { "E_B" };
    let mut samples = 0;
    let mut worst = (0.0, 0.0);
    let mut peak: f64 = 0.0;
    for (&t, row) in traj.times.iter().zip(&traj.rows) {
        let sim = if form.is_single_oscillator() { row.e_a } else { row.e_b };
        let exact = match (form, tau) {
            (ClosedForm::Eq20, Some(tau)) if t >= tau => form.evaluate(t - tau, params, Some(tau))?,
            (ClosedForm::Eq20, _) => continue,
            (_, Some(tau)) if t > tau => continue,
            _ => form.evaluate(t, params, None)?,
        };
        samples += 1;
        peak = peak.max(sim.abs());
        let dev = (sim - exact).abs();
        if dev > worst.0 {
            worst = (dev, t);
        }
    }
    ensure!(samples > 0, "no recorded times fall in the comparison window of {form}");
    Ok(CurveDeviation {
        point: point.index,
        label: point.label(),
        observable,
        samples,
        max_abs_deviation: worst.0,
        relative_to_peak: if peak > 0.0 { worst.0 / peak } else { worst.0 },
        worst_time: worst.1,
    })
}

/// Simulates `cfg` and compares every sweep point against `form`.
pub fn compare(cfg: &ScenarioConfig, form: ClosedForm) -> Result<ComparisonReport> {
    let runs = crate::runner::run_points(cfg)?;
    Ok(crate::runner::comparisons(cfg, &runs, &[form])?.remove(0))
}
