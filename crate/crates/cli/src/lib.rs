//! Scenario files, figure presets and the runner behind the `qhob` binary.

pub mod compare;
pub mod config;
pub mod presets;
pub mod runner;

pub use compare::{compare, ComparisonReport, CurveDeviation};
pub use config::ScenarioConfig;
pub use runner::{run_scenario, simulate, RunReport, CSV_COLUMNS};
