//! Executes scenarios and writes their artifacts.

use std::fs;
use std::path::{Path, PathBuf};

use anyhow::{Context, Result};
use qho_battery::fock::vacuum_state;
use qho_battery::{
    evolve, evolve_moments, CompositeSystem, DensityState, EvolveConfig, LindbladGenerator, ModelParams,
    MomentState, Trajectory,
};
use rayon::prelude::*;
use serde::Serialize;

use crate::compare::{compare_trajectory, ComparisonReport, CurveDeviation};
use crate::config::{Engine, Model, ScenarioConfig, SweepPoint};

/// Fixed CSV header; one row per recorded time.
pub const CSV_COLUMNS: [&str; 9] = [
    "t",
    "E_A",
    "E_B",
    "ergotropy_B",
    "abs_mean_a_sq",
    "abs_mean_b_sq",
    "trace_err",
    "top_pop_A",
    "top_pop_B",
];

/// Records between positivity samples on full-Fock runs.
const POSITIVITY_STRIDE: usize = 10;

/// Result of one sweep point.
#[derive(Debug, Clone)]
pub struct PointRun {
    pub point: SweepPoint,
    pub params: ModelParams,
    pub trajectory: Trajectory,
}

#[derive(Debug, Clone, Serialize)]
pub struct Assignment {
    pub path: String,
    pub value: f64,
}

#[derive(Debug, Clone, Serialize)]
pub struct PointSummary {
    pub index: usize,
    pub file: String,
    pub assignments: Vec<Assignment>,
    pub params: ModelParams,
    pub records: usize,
    pub peak_e_a: f64,
    pub peak_e_b: f64,
    pub final_e_a: f64,
    pub final_e_b: f64,
    pub final_ergotropy_b: f64,
    pub max_trace_err: f64,
    pub max_top_population: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub min_sampled_eigenvalue: Option<f64>,
}

#[derive(Debug, Clone, Serialize)]
pub struct RunReport {
    pub scenario: String,
    pub model: Model,
    pub engine: Engine,
    pub frame: qho_battery::Frame,
    pub dissipator: qho_battery::ThermalDissipator,
    pub points: Vec<PointSummary>,
    pub comparisons: Vec<ComparisonReport>,
}

fn evolve_config(cfg: &ScenarioConfig, p: &ModelParams, t_start: f64, t_end: f64) -> EvolveConfig {
    EvolveConfig {
        t_start,
        t_end,
        dt: cfg.time.dt,
        record_stride: cfg.time.record_stride,
        omega0: p.omega0,
        positivity_stride: Some(POSITIVITY_STRIDE),
        ..EvolveConfig::default()
    }
}

/// Integrates one (sweep-free) scenario from the vacuum.
pub fn simulate(cfg: &ScenarioConfig) -> Result<(ModelParams, Trajectory)> {
    let s = &cfg.scenario;
    let p = cfg.params.resolve(s.model)?;
    let t_end = cfg.time.t_end;
    let switch_off = cfg.protocol.switch_off();
    let off = ModelParams { drive: 0.0, ..p };
    let traj = match s.engine {
        Engine::Fock => {
            let tr = cfg.truncation.context("truncation is required by the fock engine")?;
            let system = match s.model {
                Model::Coupled => CompositeSystem::two_mode(
                    tr.charger,
                    tr.battery.context("truncation.battery is required")?,
                )?,
                Model::Simple => CompositeSystem::single_mode(tr.charger)?,
            };
            let generator = |p: &ModelParams| match s.model {
                Model::Coupled => LindbladGenerator::charger_battery(p, &system, s.frame, s.dissipator),
                Model::Simple => LindbladGenerator::single_oscillator(p, &system, s.frame, s.dissipator),
            };
            let start = vacuum_state(&system)?;
            let run = |state: &DensityState, p: &ModelParams, t0: f64, t1: f64| {
                evolve(state, &generator(p)?, &evolve_config(cfg, p, t0, t1))
            };
            match switch_off {
                None => run(&start, &p, 0.0, t_end)?.1,
                Some(tau) => {
                    let (state, mut traj) = run(&start, &p, 0.0, tau)?;
                    traj.extend_with(run(&state, &off, tau, t_end)?.1);
                    traj
                }
            }
        }
        Engine::Moments => {
            // The simple model is the charger alone.
            let decouple = |p: ModelParams| match s.model {
                Model::Coupled => p,
                Model::Simple => ModelParams { g: 0.0, ..p },
            };
            let run = |m: &MomentState, p: &ModelParams, t0: f64, t1: f64| {
                evolve_moments(m, &decouple(*p), s.dissipator, &evolve_config(cfg, p, t0, t1))
            };
            let start = MomentState::vacuum();
            match switch_off {
                None => run(&start, &p, 0.0, t_end)?.1,
                Some(tau) => {
                    let (m, mut traj) = run(&start, &p, 0.0, tau)?;
                    traj.extend_with(run(&m, &off, tau, t_end)?.1);
                    traj
                }
            }
        }
    };
    Ok((p, traj))
}

/// Runs every sweep point (in parallel) without writing anything.
pub fn run_points(cfg: &ScenarioConfig) -> Result<Vec<PointRun>> {
    cfg.points()?
        .into_par_iter()
        .map(|point| {
            let (params, trajectory) =
                simulate(&point.config).with_context(|| format!("sweep point {}", point.label()))?;
            Ok(PointRun {
                point,
                params,
                trajectory,
            })
        })
        .collect()
}

fn fmt(x: f64) -> String {
    format!("{x:.16e}")
}

/// Writes the fixed-column CSV for one trajectory.
pub fn write_csv(path: &Path, traj: &Trajectory) -> Result<()> {
    let mut w = csv::Writer::from_path(path).with_context(|| format!("creating {}", path.display()))?;
    w.write_record(CSV_COLUMNS)?;
    for (t, r) in traj.times.iter().zip(&traj.rows) {
        w.write_record(
            [
                *t,
                r.e_a,
                r.e_b,
                r.ergotropy_b,
                r.abs_mean_a_sq,
                r.abs_mean_b_sq,
                r.trace_err,
                r.top_pop_a,
                r.top_pop_b,
            ]
            .map(fmt),
        )?;
    }
    w.flush()?;
    Ok(())
}

pub fn csv_name(cfg: &ScenarioConfig, index: usize) -> String {
    format!("{}_{index:03}.csv", cfg.scenario.id)
}

fn summarize(cfg: &ScenarioConfig, run: &PointRun) -> PointSummary {
    let t = &run.trajectory;
    let last = t.rows.last().cloned().unwrap_or_default();
    let peak = |v: Vec<f64>| v.into_iter().fold(0.0, f64::max);
    PointSummary {
        index: run.point.index,
        file: csv_name(cfg, run.point.index),
        assignments: run
            .point
            .assignments
            .iter()
            .map(|(path, value)| Assignment {
                path: path.clone(),
                value: *value,
            })
            .collect(),
        params: run.params,
        records: t.len(),
        peak_e_a: peak(t.e_a()),
        peak_e_b: peak(t.e_b()),
        final_e_a: last.e_a,
        final_e_b: last.e_b,
        final_ergotropy_b: last.ergotropy_b,
        max_trace_err: t.max_trace_error(),
        max_top_population: t.max_top_population(),
        min_sampled_eigenvalue: t.min_sampled_eigenvalue(),
    }
}

/// Compares every point of a finished run against `forms`.
pub fn comparisons(
    cfg: &ScenarioConfig,
    runs: &[PointRun],
    forms: &[qho_battery::ClosedForm],
) -> Result<Vec<ComparisonReport>> {
    forms
        .iter()
        .map(|&form| {
            let curves = runs
                .iter()
                .map(|r| {
                    compare_trajectory(form, cfg, &r.point, &r.params, &r.trajectory)
                        .with_context(|| format!("{form} on sweep point {}", r.point.label()))
                })
                .collect::<Result<Vec<CurveDeviation>>>()?;
            Ok(ComparisonReport::new(&cfg.scenario.id, form, curves))
        })
        .collect()
}

/// Runs all sweep points, writes one CSV per point and `report.json` into
/// `out_dir` (default: the config's `outputs.dir`).
pub fn run_scenario(cfg: &ScenarioConfig, out_dir: Option<&Path>) -> Result<(PathBuf, RunReport)> {
    let dir = out_dir.map(Path::to_path_buf).unwrap_or_else(|| cfg.outputs.dir.clone());
    let forms = cfg.compare_forms()?;
    let runs = run_points(cfg)?;
    fs::create_dir_all(&dir).with_context(|| format!("creating {}", dir.display()))?;
    runs.par_iter()
        .try_for_each(|r| write_csv(&dir.join(csv_name(cfg, r.point.index)), &r.trajectory))?;
    let report = RunReport {
        scenario: cfg.scenario.id.clone(),
        model: cfg.scenario.model,
        engine: cfg.scenario.engine,
        frame: cfg.scenario.frame,
        dissipator: cfg.scenario.dissipator,
        points: runs.iter().map(|r| summarize(cfg, r)).collect(),
        comparisons: comparisons(cfg, &runs, &forms)?,
    };
    let json = serde_json::to_string_pretty(&report)?;
    fs::write(dir.join("report.json"), json + "\n")?;
    Ok((dir, report))
}
