use serde::{Deserialize, Serialize};

use crate::{Error, Result};

/// Physical parameters, all frequencies and rates in units of the bare
/// oscillator frequency (so `omega0` is normally 1).
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ModelParams {
    /// Bare frequency of charger and battery.
    pub omega0: f64,
    /// Drive (laser) frequency.
    pub omega_f: f64,
    /// Charger–battery coupling.
    pub g: f64,
    /// Drive amplitude.
    #[serde(rename = "F")]
    pub drive: f64,
    /// Charger damping rate.
    #[serde(rename = "gamma_A")]
    pub gamma_a: f64,
    /// Battery damping rate.
    #[serde(rename = "gamma_B", default)]
    pub gamma_b: f64,
    /// Mean bath occupation.
    #[serde(default)]
    pub n_thermal: f64,
}

impl Default for ModelParams {
    fn default() -> Self {
        Self {
            omega0: 1.0,
            omega_f: 1.0,
            g: 0.2,
            drive: 0.1,
            gamma_a: 0.05,
            gamma_b: 0.0,
            n_thermal: 0.0,
        }
    }
}

impl ModelParams {
    /// Local detuning `ω₀ − ω_f`.
    pub fn delta(&self) -> f64 {
        self.omega0 - self.omega_f
    }

    /// Detuning from the lower supermode, `ω₋ − ω_f = δ − g`.
    pub fn global_detuning(&self) -> f64 {
        self.delta() - self.g
    }

    /// Same parameters with the drive placed at global detuning `detuning` below ω₋.
    pub fn with_global_detuning(mut self, detuning: f64) -> Self {
        self.omega_f = self.omega0 - self.g - detuning;
        self
    }

    /// Same parameters with local detuning `delta = ω₀ − ω_f`.
    pub fn with_local_detuning(mut self, delta: f64) -> Self {
        self.omega_f = self.omega0 - delta;
        self
    }

    pub fn validate(&self) -> Result<()> {
        let fields = [
            ("omega0", self.omega0),
            ("omega_f", self.omega_f),
            ("g", self.g),
            ("F", self.drive),
            ("gamma_A", self.gamma_a),
            ("gamma_B", self.gamma_b),
            ("n_thermal", self.n_thermal),
        ];
        for (name, v) in fields {
            if !v.is_finite() {
                return Err(Error::InvalidParameter(format!("{name} must be finite, got {v}")));
            }
        }
        for (name, v) in &fields[2..] {
            if *v < 0.0 {
                return Err(Error::InvalidParameter(format!("{name} must be >= 0, got {v}")));
            }
        }
        if self.omega0 <= 0.0 {
            return Err(Error::InvalidParameter(format!(
                "omega0 must be > 0, got {}",
                self.omega0
            )));
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn derived_detunings() {
        let p = ModelParams::default().with_global_detuning(0.01);
        assert!((p.omega_f - 0.79).abs() < 1e-15);
        assert!((p.delta() - 0.21).abs() < 1e-12);
        assert!((p.global_detuning() - 0.01).abs() < 1e-12);
        let p = ModelParams::default().with_local_detuning(0.3);
        assert!((p.delta() - 0.3).abs() < 1e-15);
    }

    #[test]
    fn rejects_negative_rates() {
        let p = ModelParams { gamma_a: -0.1, ..Default::default() };
        assert!(p.validate().is_err());
        let p = ModelParams { n_thermal: f64::NAN, ..Default::default() };
        assert!(p.validate().is_err());
        assert!(ModelParams::default().validate().is_ok());
    }
}
