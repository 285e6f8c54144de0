//! TOML scenario files.

use std::path::{Path, PathBuf};

use anyhow::{bail, ensure, Context, Result};
use qho_battery::{ClosedForm, Frame, ModelParams, ThermalDissipator};
use serde::{Deserialize, Serialize};

/// Parameter paths a sweep may vary.
pub const SWEEP_PATHS: [&str; 11] = [
    "params.omega0",
    "params.omega_f",
    "params.detuning",
    "params.g",
    "params.F",
    "params.gamma_A",
    "params.gamma_B",
    "params.n_thermal",
    "protocol.tau",
    "time.t_end",
    "time.dt",
];

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ScenarioConfig {
    pub scenario: ScenarioSection,
    #[serde(default)]
    pub params: ParamsSection,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub truncation: Option<Truncation>,
    pub time: TimeSection,
    #[serde(default)]
    pub protocol: ProtocolSection,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub sweep: Vec<SweepAxis>,
    #[serde(default)]
    pub compare: CompareSection,
    #[serde(default)]
    pub outputs: Outputs,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Model {
    /// Driven charger coupled to a battery.
    #[default]
    Coupled,
    /// A single driven, damped oscillator; the energy is reported as `E_A`.
    Simple,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Engine {
    /// GKSL master equation on a truncated Fock space.
    #[default]
    Fock,
    /// Exact Gaussian moment propagation (rotating frame only).
    Moments,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ScenarioSection {
    pub id: String,
    #[serde(default)]
    pub model: Model,
    #[serde(default = "default_frame")]
    pub frame: Frame,
    #[serde(default)]
    pub engine: Engine,
    #[serde(default)]
    pub dissipator: ThermalDissipator,
}

fn default_frame() -> Frame {
    Frame::Rotating
}

/// Model parameters as written in a scenario file. The drive frequency is
/// given either directly (`omega_f`) or as a `detuning`: the supermode
/// detuning `Δ = ω₀ − g − ω_f` for the coupled model and `δ = ω₀ − ω_f` for
/// the simple one. With neither, the drive sits at `ω₀`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct ParamsSection {
    pub omega0: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub omega_f: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub detuning: Option<f64>,
    pub g: f64,
    #[serde(rename = "F")]
    pub drive: f64,
    #[serde(rename = "gamma_A")]
    pub gamma_a: f64,
    #[serde(rename = "gamma_B")]
    pub gamma_b: f64,
    pub n_thermal: f64,
}

impl Default for ParamsSection {
    fn default() -> Self {
        let p = ModelParams::default();
        Self {
            omega0: p.omega0,
            omega_f: None,
            detuning: None,
            g: p.g,
            drive: p.drive,
            gamma_a: p.gamma_a,
            gamma_b: p.gamma_b,
            n_thermal: p.n_thermal,
        }
    }
}

impl ParamsSection {
    pub fn resolve(&self, model: Model) -> Result<ModelParams> {
        let base = ModelParams {
            omega0: self.omega0,
            omega_f: self.omega0,
            g: self.g,
            drive: self.drive,
            gamma_a: self.gamma_a,
            gamma_b: self.gamma_b,
            n_thermal: self.n_thermal,
        };
        let p = match (self.omega_f, self.detuning) {
            (Some(_), Some(_)) => bail!("params: give either omega_f or detuning, not both"),
            (Some(w), None) => ModelParams { omega_f: w, ..base },
            (None, Some(d)) => match model {
                Model::Coupled => base.with_global_detuning(d),
                Model::Simple => base.with_local_detuning(d),
            },
            (None, None) => base,
        };
        p.validate().context("params")?;
        Ok(p)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Truncation {
    /// Fock levels kept for the charger (or the single oscillator).
    pub charger: usize,
    /// Fock levels kept for the battery; unused by the simple model.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub battery: Option<usize>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TimeSection {
    pub t_end: f64,
    #[serde(default = "default_dt")]
    pub dt: f64,
    #[serde(default = "default_stride")]
    pub record_stride: usize,
}

fn default_dt() -> f64 {
    0.01
}

fn default_stride() -> usize {
    10
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ProtocolKind {
    #[default]
    Charge,
    /// Drive on until `tau`, then off until `t_end`.
    ChargeThenDischarge,
}

#[derive(Debug, Clone, PartialEq, Default, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ProtocolSection {
    #[serde(default)]
    pub kind: ProtocolKind,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub tau: Option<f64>,
}

impl ProtocolSection {
    /// Switch-off time, if the drive is ever switched off.
    pub fn switch_off(&self) -> Option<f64> {
        match self.kind {
            ProtocolKind::Charge => None,
            ProtocolKind::ChargeThenDischarge => self.tau,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SweepAxis {
    pub path: String,
    pub values: Vec<f64>,
}

#[derive(Debug, Clone, PartialEq, Default, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CompareSection {
    /// Closed-form ids evaluated against every sweep point.
    #[serde(default)]
    pub forms: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Outputs {
    #[serde(default = "default_dir")]
    pub dir: PathBuf,
}

impl Default for Outputs {
    fn default() -> Self {
        Self { dir: default_dir() }
    }
}

fn default_dir() -> PathBuf {
    PathBuf::from("out")
}

/// One concrete run of a scenario after sweep values are substituted.
#[derive(Debug, Clone, PartialEq)]
pub struct SweepPoint {
    pub index: usize,
    pub assignments: Vec<(String, f64)>,
    pub config: ScenarioConfig,
}

impl SweepPoint {
    pub fn label(&self) -> String {
        if self.assignments.is_empty() {
            return "base".into();
        }
        self.assignments
            .iter()
            .map(|(p, v)| format!("{p}={v}"))
            .collect::<Vec<_>>()
            .join(",")
    }
}

impl ScenarioConfig {
    pub fn from_toml(text: &str) -> Result<Self> {
        let cfg: Self = toml::from_str(text).context("invalid scenario file")?;
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn load(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
        Self::from_toml(&text).with_context(|| format!("in {}", path.display()))
    }

    pub fn to_toml(&self) -> Result<String> {
        Ok(toml::to_string(self)?)
    }

    pub fn compare_forms(&self) -> Result<Vec<ClosedForm>> {
        self.compare
            .forms
            .iter()
            .map(|f| f.parse::<ClosedForm>().with_context(|| "compare.forms"))
            .collect()
    }

    /// Checks the base config and every sweep point.
    pub fn validate(&self) -> Result<()> {
        let id = &self.scenario.id;
        ensure!(
            !id.is_empty() && id.chars().all(|c| c.is_ascii_alphanumeric() || c == '-' || c == '_'),
            "scenario.id must be non-empty and use only letters, digits, '-' and '_' (got `{id}`)"
        );
        for axis in &self.sweep {
            ensure!(
                SWEEP_PATHS.contains(&axis.path.as_str()),
                "sweep.path `{}` is not sweepable (expected one of {})",
                axis.path,
                SWEEP_PATHS.join(", ")
            );
            ensure!(!axis.values.is_empty(), "sweep `{}` has no values", axis.path);
            if let Some(v) = axis.values.iter().find(|v| !v.is_finite()) {
                bail!("sweep `{}` has a non-finite value {v}", axis.path);
            }
        }
        self.compare_forms()?;
        for point in self.points_unchecked() {
            point
                .config
                .validate_point()
                .with_context(|| format!("sweep point {}", point.label()))?;
        }
        Ok(())
    }

    fn validate_point(&self) -> Result<()> {
        let t = &self.time;
        ensure!(t.t_end.is_finite() && t.t_end > 0.0, "time.t_end must be > 0 (got {})", t.t_end);
        ensure!(t.dt.is_finite() && t.dt > 0.0, "time.dt must be > 0 (got {})", t.dt);
        ensure!(t.record_stride >= 1, "time.record_stride must be >= 1");
        ensure!(
            whole_steps(t.t_end, t.dt),
            "time.t_end = {} is not a whole number of time.dt = {}",
            t.t_end,
            t.dt
        );
        match self.protocol.kind {
            ProtocolKind::Charge => ensure!(
                self.protocol.tau.is_none(),
                "protocol.tau is only used with kind = \"charge_then_discharge\""
            ),
            ProtocolKind::ChargeThenDischarge => {
                let tau = self
                    .protocol
                    .tau
                    .context("protocol.tau is required for kind = \"charge_then_discharge\"")?;
                ensure!(
                    tau > 0.0 && tau < t.t_end,
                    "protocol.tau must lie in (0, time.t_end) (got {tau}, t_end = {})",
                    t.t_end
                );
                ensure!(whole_steps(tau, t.dt), "protocol.tau = {tau} is not a whole number of time.dt");
            }
        }
        self.params.resolve(self.scenario.model)?;
        match self.scenario.engine {
            Engine::Fock => {
                let tr = self
                    .truncation
                    .context("truncation.charger (and .battery for the coupled model) is required by the fock engine")?;
                ensure!(tr.charger >= 2, "truncation.charger must be >= 2 (got {})", tr.charger);
                if self.scenario.model == Model::Coupled {
                    let b = tr
                        .battery
                        .context("truncation.battery is required for the coupled model")?;
                    ensure!(b >= 2, "truncation.battery must be >= 2 (got {b})");
                }
            }
            Engine::Moments => ensure!(
                self.scenario.frame == Frame::Rotating,
                "scenario.frame must be \"rotating\" with the moments engine"
            ),
        }
        Ok(())
    }

    /// Cartesian product of the sweep axes, in file order (last axis fastest).
    pub fn points(&self) -> Result<Vec<SweepPoint>> {
        self.validate()?;
        Ok(self.points_unchecked())
    }

    fn points_unchecked(&self) -> Vec<SweepPoint> {
        let mut combos: Vec<Vec<(String, f64)>> = vec![Vec::new()];
        for axis in &self.sweep {
            combos = combos
                .into_iter()
                .flat_map(|c| {
                    axis.values.iter().map(move |&v| {
                        let mut next = c.clone();
                        next.push((axis.path.clone(), v));
                        next
                    })
                })
                .collect();
        }
        combos
            .into_iter()
            .enumerate()
            .map(|(index, assignments)| {
                let mut config = self.clone();
                config.sweep.clear();
                for (path, v) in &assignments {
                    config.assign(path, *v);
                }
                SweepPoint {
                    index,
                    assignments,
                    config,
                }
            })
            .collect()
    }

    fn assign(&mut self, path: &str, v: f64) {
        let p = &mut self.params;
        match path {
            "params.omega0" => p.omega0 = v,
            "params.omega_f" => {
                p.omega_f = Some(v);
                p.detuning = None;
            }
            "params.detuning" => {
                p.detuning = Some(v);
                p.omega_f = None;
            }
            "params.g" => p.g = v,
            "params.F" => p.drive = v,
            "params.gamma_A" => p.gamma_a = v,
            "params.gamma_B" => p.gamma_b = v,
            "params.n_thermal" => p.n_thermal = v,
            "protocol.tau" => self.protocol.tau = Some(v),
            "time.t_end" => self.time.t_end = v,
            "time.dt" => self.time.dt = v,
            _ => unreachable!("sweep paths are validated before assignment"),
        }
    }
}

fn whole_steps(span: f64, dt: f64) -> bool {
    let n = (span / dt).round();
    (n * dt - span).abs() <= 1e-9 * span.max(1.0)
}
