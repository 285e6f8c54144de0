use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{Context, Result};
use clap::{Parser, Subcommand};
use qho_battery::fock::planck_occupation;
use qho_battery::ClosedForm;
use qho_battery_cli::config::Model;
use qho_battery_cli::{compare, presets, run_scenario, ComparisonReport, RunReport, ScenarioConfig};

#[derive(Parser)]
#[command(name = "qhob", version, about = "Driven quantum-harmonic-oscillator battery simulator")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run a scenario file: one CSV per sweep point plus report.json.
    Simulate {
        config: PathBuf,
        /// Output directory (overrides outputs.dir).
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Run the built-in scenarios for a figure (fig2 .. fig6).
    Figure {
        name: String,
        /// Parent directory; each scenario writes to <out>/<id>.
        #[arg(long, default_value = "out")]
        out: PathBuf,
        /// Only write the scenario files, do not run them.
        #[arg(long)]
        config_only: bool,
    },
    /// Compare a scenario against a closed form (eq10, eq16a, eq17a, eq17b, eq19, eq20, eqB4).
    Compare {
        config: PathBuf,
        form: String,
        /// Also write comparison_<form>.json here.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Mean bath occupation 1/(exp(ω_e/kT) − 1).
    Planck {
        #[arg(allow_hyphen_values = true)]
        omega_e: f64,
        #[arg(allow_hyphen_values = true)]
        kt: f64,
        /// Also write planck.json here.
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

fn print_run(dir: &Path, report: &RunReport) {
    println!("{}: {} point(s) -> {}", report.scenario, report.points.len(), dir.display());
    for p in &report.points {
        match report.model {
            Model::Coupled => println!(
                "  {}  peak E_B {:.6}  final E_B {:.6}  final W_B {:.6}  peak E_A {:.6}",
                p.file, p.peak_e_b, p.final_e_b, p.final_ergotropy_b, p.peak_e_a
            ),
            Model::Simple => println!("  {}  peak E_A {:.6}  final E_A {:.6}", p.file, p.peak_e_a, p.final_e_a),
        }
    }
    for c in &report.comparisons {
        print_comparison(c);
    }
}

fn print_comparison(c: &ComparisonReport) {
    println!("  {} ({}):", c.form, c.description);
    for curve in &c.curves {
        println!(
            "    {:<40} max |dev| {:.3e}  rel. to peak {:.3e}  worst at t = {}",
            curve.label, curve.max_abs_deviation, curve.relative_to_peak, curve.worst_time
        );
    }
}

fn write_json(dir: &Path, name: &str, value: &impl serde::Serialize) -> Result<()> {
    fs::create_dir_all(dir).with_context(|| format!("creating {}", dir.display()))?;
    fs::write(dir.join(name), serde_json::to_string_pretty(value)? + "\n")?;
    Ok(())
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::FAILURE
        }
    }
}

fn run(cli: Cli) -> Result<()> {
    match cli.command {
        Command::Simulate { config, out } => {
            let cfg = ScenarioConfig::load(&config)?;
            let (dir, report) = run_scenario(&cfg, out.as_deref())?;
            print_run(&dir, &report);
        }
        Command::Figure { name, out, config_only } => {
            for cfg in presets::preset(&name)? {
                let dir = out.join(&cfg.scenario.id);
                if config_only {
                    fs::create_dir_all(&dir)?;
                    let path = dir.join(format!("{}.toml", cfg.scenario.id));
                    fs::write(&path, cfg.to_toml()?)?;
                    println!("{}", path.display());
                } else {
                    let (dir, report) = run_scenario(&cfg, Some(&dir))?;
                    print_run(&dir, &report);
                }
            }
        }
        Command::Compare { config, form, out } => {
            let cfg = ScenarioConfig::load(&config)?;
            let form: ClosedForm = form.parse()?;
            let report = compare(&cfg, form)?;
            println!("{}:", report.scenario);
            print_comparison(&report);
            if let Some(dir) = out {
                write_json(&dir, &format!("comparison_{form}.json"), &report)?;
            }
        }
        Command::Planck { omega_e, kt, out } => {
            let n = planck_occupation(omega_e, kt)?;
            println!("{n:.16e}");
            if let Some(dir) = out {
                let value = serde_json::json!({ "omega_e": omega_e, "kT": kt, "n_thermal": n });
                write_json(&dir, "planck.json", &value)?;
            }
        }
    }
    Ok(())
}
