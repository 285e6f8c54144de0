//! Built-in scenarios for the published figures. All use g = 0.2, F = 0.1,
//! γ_B = 0 and, where damped, γ_A = 0.05 (units of ω₀). Time spans are chosen
//! to contain the peak, the steady state or two full 2π/Δ periods.

use std::path::PathBuf;

use anyhow::{bail, Result};
use qho_battery::{Frame, ThermalDissipator};

use crate::config::{
    CompareSection, Engine, Model, Outputs, ParamsSection, ProtocolKind, ProtocolSection, ScenarioConfig,
    ScenarioSection, SweepAxis, TimeSection, Truncation,
};

pub const FIGURES: [&str; 5] = ["fig2", "fig3", "fig4", "fig5", "fig6"];

/// Fock levels for the single oscillator; its steady energy reaches 16.
const SIMPLE_D: usize = 45;

fn base(id: &str, model: Model, engine: Engine, t_end: f64, dt: f64, stride: usize) -> ScenarioConfig {
    ScenarioConfig {
        scenario: ScenarioSection {
            id: id.into(),
            model,
            frame: Frame::Rotating,
            engine,
            dissipator: ThermalDissipator::Physical,
        },
        params: ParamsSection::default(),
        truncation: None,
        time: TimeSection {
            t_end,
            dt,
            record_stride: stride,
        },
        protocol: ProtocolSection::default(),
        sweep: Vec::new(),
        compare: CompareSection::default(),
        outputs: Outputs {
            dir: PathBuf::from("out").join(id),
        },
    }
}

fn sweep(path: &str, values: &[f64]) -> SweepAxis {
    SweepAxis {
        path: path.into(),
        values: values.to_vec(),
    }
}

fn forms(ids: &[&str]) -> CompareSection {
    CompareSection {
        forms: ids.iter().map(|s| s.to_string()).collect(),
    }
}

fn with_detuning(mut cfg: ScenarioConfig, detuning: f64, gamma_a: f64) -> ScenarioConfig {
    cfg.params.detuning = Some(detuning);
    cfg.params.gamma_a = gamma_a;
    cfg
}

/// Scenario configs behind a figure name.
pub fn preset(name: &str) -> Result<Vec<ScenarioConfig>> {
    let configs = match name {
        // Drive at ω₀ (off the supermodes), bath occupation swept.
        "fig2" => {
            let mut c = base("fig2", Model::Coupled, Engine::Fock, 200.0, 0.05, 10);
            c.truncation = Some(Truncation {
                charger: 16,
                battery: Some(16),
            });
            c.sweep = vec![sweep("params.n_thermal", &[0.0, 0.25, 0.5, 0.75, 1.0])];
            vec![c]
        }
        // Drive near ω₋, lossless and damped charger.
        "fig3" => {
            let mut c = base("fig3", Model::Coupled, Engine::Moments, 1500.0, 0.05, 20);
            c.sweep = vec![
                sweep("params.gamma_A", &[0.0, 0.05]),
                sweep("params.detuning", &[0.0, 0.01, 0.02]),
            ];
            vec![c]
        }
        "fig4" => {
            let mut a = with_detuning(base("fig4a", Model::Coupled, Engine::Moments, 1300.0, 0.05, 20), 0.01, 0.0);
            a.compare = forms(&["eq17a", "eq17b", "eqB4"]);
            let mut b = with_detuning(base("fig4b", Model::Coupled, Engine::Moments, 800.0, 0.05, 20), 0.0, 0.05);
            b.compare = forms(&["eq16a", "eqB4"]);
            let mut c = with_detuning(base("fig4c", Model::Coupled, Engine::Moments, 800.0, 0.05, 20), 0.01, 0.05);
            c.compare = forms(&["eq16a", "eqB4"]);
            vec![a, b, c]
        }
        // Single oscillator against the coupled pair at the same detunings.
        "fig5" => {
            let mut simple = base("fig5-simple", Model::Simple, Engine::Fock, 400.0, 0.05, 20);
            simple.truncation = Some(Truncation {
                charger: SIMPLE_D,
                battery: None,
            });
            simple.sweep = vec![sweep("params.detuning", &[0.0, 0.01])];
            simple.compare = forms(&["eq19"]);
            let mut coupled = base("fig5-coupled", Model::Coupled, Engine::Moments, 400.0, 0.05, 20);
            coupled.sweep = vec![sweep("params.detuning", &[0.0, 0.01])];
            coupled.compare = forms(&["eq16a", "eqB4"]);
            vec![simple, coupled]
        }
        // Charge until τ = 300, then the drive is switched off.
        "fig6" => {
            let mut c = base("fig6", Model::Simple, Engine::Fock, 600.0, 0.05, 20);
            c.truncation = Some(Truncation {
                charger: SIMPLE_D,
                battery: None,
            });
            c.protocol = ProtocolSection {
                kind: ProtocolKind::ChargeThenDischarge,
                tau: Some(300.0),
            };
            c.sweep = vec![sweep("params.detuning", &[0.0, 0.01, 0.05])];
            c.compare = forms(&["eq19", "eq20"]);
            vec![c]
        }
        other => bail!("unknown figure `{other}` (expected one of {})", FIGURES.join(", ")),
    };
    for c in &configs {
        c.validate()?;
    }
    Ok(configs)
}
