//! Closed-form battery-energy curves, used as fast evaluators and as oracles
//! for the numerical engines. Energies are in units of ω₀ times `omega0`.

use std::fmt;
use std::str::FromStr;

use crate::params::ModelParams;
use crate::{Error, Result, C64};

/// Largest imaginary residue tolerated when a complex evaluation must be real.
pub const IMAGINARY_RESIDUE_TOL: f64 = 1e-10;

fn real_part(z: C64, what: &str) -> Result<f64> {
    let scale = z.re.abs().max(1.0);
    if z.im.abs() > IMAGINARY_RESIDUE_TOL * scale || !z.re.is_finite() {
        return Err(Error::Domain(format!("{what} evaluated to non-real {z}")));
    }
    Ok(z.re)
}

// sinh(x)/x, continuous through x = 0
fn sinhc(x: C64) -> C64 {
    if x.norm() < 1e-4 {
        let x2 = x * x;
        1.0 + x2 / 6.0 + x2 * x2 / 120.0
    } else {
        x.sinh() / x
    }
}

/// Battery energy for a drive at the bare frequency (`ω_f = ω₀`), zero temperature:
/// `(ω₀F²/g²)[1 − e^{−γt/4}(cosh(εt/4) + (γ/ε) sinh(εt/4))]²`, `ε = √(γ² − 16g²)`.
pub fn eb_offres(t: f64, p: &ModelParams) -> Result<f64> {
    p.validate()?;
    if p.g <= 0.0 {
        return Err(Error::Domain("off-resonance closed form needs g > 0".into()));
    }
    let gamma = p.gamma_a;
    let eps = C64::new(gamma * gamma - 16.0 * p.g * p.g, 0.0).sqrt();
    let x = eps * (t / 4.0);
    // (γ/ε) sinh(εt/4) = (γt/4) · sinh(x)/x
    let bracket = 1.0 - (-gamma * t / 4.0).exp() * (x.cosh() + sinhc(x) * (gamma * t / 4.0));
    let e = bracket * bracket * (p.omega0 * p.drive * p.drive / (p.g * p.g));
    real_part(e, "off-resonance energy")
}

/// Drive near the lower supermode with a damped charger, small-γ expansion.
/// Uses `Δ = δ − g`.
pub fn eb_onres_dissipative(t: f64, p: &ModelParams) -> Result<f64> {
    p.validate()?;
    let d = p.global_detuning();
    let g = p.g;
    let ga = p.gamma_a;
    let denom = d * d * (d + 2.0 * g).powi(2) + ga * ga * (d + g).powi(2) / 4.0;
    if denom.abs() < 1e-20 * g.powi(4).max(f64::MIN_POSITIVE) {
        return Err(Error::Domain(
            "Δ = 0 with γ_A = 0 grows without bound; use eb_onres_small_detuning".into(),
        ));
    }
    let e2 = (-ga * t / 2.0).exp();
    let e4 = (-ga * t / 4.0).exp();
    let bracket = g * g + g * g * e2
        - g * e4
            * ((ga / 2.0) * (g * t).sin() * ((d + g) * t).cos() + (d + 2.0 * g) * (d * t).cos()
                - d * ((d + 2.0 * g) * t).cos())
        - (e2 / 8.0)
            * (4.0 * d * (d + 2.0 * g) * (2.0 * g * t).cos() - 2.0 * ga * (d + g) * (2.0 * g * t).sin());
    Ok(p.omega0 * p.drive * p.drive / denom * bracket)
}

/// The `γ_A = 0` limit of [`eb_onres_dissipative`] (four-cosine form).
/// Does not vanish at `t = 0`: it equals `−ω₀F²/(2Δ(Δ+2g))` there.
pub fn eb_onres_lossless(t: f64, p: &ModelParams) -> Result<f64> {
    p.validate()?;
    let d = p.global_detuning();
    let g = p.g;
    if d.abs() < 1e-9 || (d + 2.0 * g).abs() < 1e-9 {
        return Err(Error::Domain(format!(
            "lossless closed form is singular at Δ = {d} (needs Δ ∉ {{0, −2g}})"
        )));
    }
    let s = d + 2.0 * g;
    let v = 2.0 * g * g / (d * d * s * s) - g * (d * t).cos() / (d * d * s)
        + g * (s * t).cos() / (d * s * s)
        - (2.0 * g * t).cos() / (2.0 * d * s);
    Ok(p.omega0 * p.drive * p.drive * v)
}

/// Small-detuning form `(ω₀F²/Δ²) sin²(Δt/2)`, with the `Δ → 0` limit `ω₀F²t²/4`.
pub fn eb_onres_small_detuning(t: f64, p: &ModelParams) -> Result<f64> {
    p.validate()?;
    let d = p.global_detuning();
    let x = d * t / 2.0;
    let sinc = if x.abs() < 1e-8 { 1.0 - x * x / 6.0 } else { x.sin() / x };
    Ok(p.omega0 * p.drive * p.drive * t * t / 4.0 * sinc * sinc)
}

/// Single driven damped oscillator charged from vacuum, `Δ = δ = ω₀ − ω_f`:
/// `ω₀F²/(γ²/4 + δ²) [e^{−γt} − 2e^{−γt/2} cos δt + 1]`.
pub fn eb_simple_charge(t: f64, p: &ModelParams) -> Result<f64> {
    p.validate()?;
    let d = p.delta();
    let ga = p.gamma_a;
    let denom = ga * ga / 4.0 + d * d;
    if denom == 0.0 {
        return Err(Error::Domain("γ_A = 0 and δ = 0: the prefactor diverges".into()));
    }
    let bracket = (-ga * t).exp() - 2.0 * (-ga * t / 2.0).exp() * (d * t).cos() + 1.0;
    Ok(p.omega0 * p.drive * p.drive / denom * bracket)
}

/// Free decay after the drive is switched off at `tau`; `t` counts from switch-off.
pub fn eb_simple_discharge(t: f64, tau: f64, p: &ModelParams) -> Result<f64> {
    if !(t >= 0.0) || !(tau >= 0.0) {
        return Err(Error::Domain(format!("need t >= 0 and tau >= 0, got t = {t}, tau = {tau}")));
    }
    Ok(eb_simple_charge(tau, p)? * (-p.gamma_a * t).exp())
}

/// Exponents and constants of `⟨b(t)⟩ = c₁e^{m₁t} + c₂e^{m₂t} + forced_term`
/// for the pair started in vacuum.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ClosedFormCoefficients {
    pub m1: C64,
    pub m2: C64,
    pub c1: C64,
    pub c2: C64,
    pub forced_term: C64,
}

impl ClosedFormCoefficients {
    /// Roots of `m² + (2iδ + γ/2)m − (δ² − g² − iγδ/2) = 0`, i.e.
    /// `m = ½[−γ/2 − 2iδ ± √(γ²/4 − 4g²)]`. `m₁` takes the `+` branch and
    /// reduces to `−i(δ − g)` at `γ = 0`. Initial conditions `⟨b⟩ = ⟨ḃ⟩ = 0`.
    pub fn new(p: &ModelParams) -> Result<Self> {
        p.validate()?;
        if p.g <= 0.0 {
            return Err(Error::Domain("first-moment closed form needs g > 0".into()));
        }
        let (delta, g, ga) = (p.delta(), p.g, p.gamma_a);
        let root = C64::new(ga * ga / 4.0 - 4.0 * g * g, 0.0).sqrt();
        let base = C64::new(-ga / 2.0, -2.0 * delta);
        let m1 = (base + root) / 2.0;
        let m2 = (base - root) / 2.0;
        if (m1 - m2).norm() < 1e-12 {
            return Err(Error::Domain("degenerate exponents (γ_A = 4g)".into()));
        }
        let denom = C64::new(delta * delta - g * g, -ga * delta / 2.0);
        if denom.norm() < 1e-12 * (delta * delta + g * g) {
            return Err(Error::Domain("undamped resonance: forced amplitude diverges".into()));
        }
        let forced_term = g * p.drive / denom;
        let c1 = forced_term * m2 / (m1 - m2);
        let c2 = -forced_term * m1 / (m1 - m2);
        Ok(Self {
            m1,
            m2,
            c1,
            c2,
            forced_term,
        })
    }

    pub fn mean_b(&self, t: f64) -> C64 {
        self.c1 * (self.m1 * t).exp() + self.c2 * (self.m2 * t).exp() + self.forced_term
    }
}

/// `⟨b(t)⟩` from the second-order equation for the battery amplitude.
pub fn mean_b_closed_form(t: f64, p: &ModelParams) -> Result<C64> {
    Ok(ClosedFormCoefficients::new(p)?.mean_b(t))
}

/// `ω₀ |⟨b(t)⟩|²` expanded term by term.
pub fn eb_meanfield_closed_form(t: f64, p: &ModelParams) -> Result<f64> {
    let k = ClosedFormCoefficients::new(p)?;
    let (c1, c2, m1, m2, f) = (k.c1, k.c2, k.m1, k.m2, k.forced_term);
    let e = |z: C64| (z * t).exp();
    let sum = c1.conj() * c1 * e(m1.conj() + m1)
        + c2.conj() * c2 * e(m2.conj() + m2)
        + c1.conj() * c2 * e(m1.conj() + m2)
        + c1 * c2.conj() * e(m1 + m2.conj())
        + c1.conj() * e(m1.conj()) * f
        + c1 * e(m1) * f.conj()
        + c2.conj() * e(m2.conj()) * f
        + c2 * e(m2) * f.conj()
        + f.norm_sqr();
    Ok(p.omega0 * real_part(sum, "mean-field energy")?)
}

/// Named closed-form curves that numerical trajectories can be compared to.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ClosedForm {
    /// [`eb_offres`]
    Eq10,
    /// [`eb_onres_dissipative`]
    Eq16a,
    /// [`eb_onres_lossless`]
    Eq17a,
    /// [`eb_onres_small_detuning`]
    Eq17b,
    /// [`eb_simple_charge`]
    Eq19,
    /// [`eb_simple_discharge`]
    Eq20,
    /// [`eb_meanfield_closed_form`]
    EqB4,
}

impl ClosedForm {
    pub const ALL: [ClosedForm; 7] = [
        ClosedForm::Eq10,
        ClosedForm::Eq16a,
        ClosedForm::Eq17a,
        ClosedForm::Eq17b,
        ClosedForm::Eq19,
        ClosedForm::Eq20,
        ClosedForm::EqB4,
    ];

    pub fn id(self) -> &'static str {
        match self {
            ClosedForm::Eq10 => "eq10",
            ClosedForm::Eq16a => "eq16a",
            ClosedForm::Eq17a => "eq17a",
            ClosedForm::Eq17b => "eq17b",
            ClosedForm::Eq19 => "eq19",
            ClosedForm::Eq20 => "eq20",
            ClosedForm::EqB4 => "eqB4",
        }
    }

    pub fn description(self) -> &'static str {
        match self {
            ClosedForm::Eq10 => "battery energy, drive at bare frequency",
            ClosedForm::Eq16a => "battery energy near supermode resonance, damped charger",
            ClosedForm::Eq17a => "battery energy near supermode resonance, lossless charger",
            ClosedForm::Eq17b => "battery energy, lossless charger, small detuning",
            ClosedForm::Eq19 => "single oscillator charging energy",
            ClosedForm::Eq20 => "single oscillator self-discharge energy",
            ClosedForm::EqB4 => "mean-field battery energy from the exact first moment",
        }
    }

    /// True for curves describing the single-oscillator model (compared
    /// against `E_A`); the rest describe the battery of the coupled pair.
    pub fn is_single_oscillator(self) -> bool {
        matches!(self, ClosedForm::Eq19 | ClosedForm::Eq20)
    }

    /// Evaluates the curve. `tau` is the switch-off time for [`ClosedForm::Eq20`],
    /// whose `t` then counts from switch-off.
    pub fn evaluate(self, t: f64, p: &ModelParams, tau: Option<f64>) -> Result<f64> {
        match self {
            ClosedForm::Eq10 => eb_offres(t, p),
            ClosedForm::Eq16a => eb_onres_dissipative(t, p),
            ClosedForm::Eq17a => eb_onres_lossless(t, p),
            ClosedForm::Eq17b => eb_onres_small_detuning(t, p),
            ClosedForm::Eq19 => eb_simple_charge(t, p),
            ClosedForm::Eq20 => {
                let tau = tau.ok_or_else(|| Error::Domain("eq20 needs a switch-off time".into()))?;
                eb_simple_discharge(t, tau, p)
            }
            ClosedForm::EqB4 => eb_meanfield_closed_form(t, p),
        }
    }
}

impl fmt::Display for ClosedForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.id())
    }
}

impl FromStr for ClosedForm {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        ClosedForm::ALL
            .into_iter()
            .find(|c| c.id().eq_ignore_ascii_case(s))
            .ok_or_else(|| {
                Error::InvalidParameter(format!(
                    "unknown closed form `{s}` (expected one of eq10, eq16a, eq17a, eq17b, eq19, eq20, eqB4)"
                ))
            })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn params(omega_f: f64, g: f64, drive: f64, gamma_a: f64) -> ModelParams {
        ModelParams {
            omega_f,
            g,
            drive,
            gamma_a,
            ..ModelParams::default()
        }
    }

    fn rel(a: f64, b: f64) -> f64 {
        (a - b).abs() / b.abs().max(1e-300)
    }

    // |⟨b(t)⟩|² from a DOP853 integration of the mean equations (rtol 1e-13).
    const ODE_BATTERY: [((f64, f64, f64, f64), [(f64, f64); 4]); 4] = [
        (
            (1.0, 0.2, 0.1, 0.05),
            [
                (1.0, 9.769793890062548e-05),
                (5.0, 4.871917186899658e-02),
                (15.0, 8.212026468755046e-01),
                (40.0, 2.710214434517312e-01),
            ],
        ),
        (
            (1.0, 0.2, 0.1, 1.0),
            [
                (1.0, 7.216608374079131e-05),
                (5.0, 1.397173819325460e-02),
                (15.0, 1.236645342398506e-01),
                (40.0, 2.379386868732954e-01),
            ],
        ),
        (
            (0.79, 0.2, 0.05, 0.05),
            [
                (1.0, 2.436457194569824e-05),
                (5.0, 1.143737465898661e-02),
                (15.0, 1.213032191767849e-01),
                (40.0, 6.261042930717596e-01),
            ],
        ),
        (
            (0.81, 0.2, 0.02, 0.0),
            [
                (1.0, 3.965446182993498e-06),
                (5.0, 2.008021581282745e-03),
                (15.0, 2.584934705483575e-02),
                (40.0, 1.664210843264079e-01),
            ],
        ),
    ];

    #[test]
    fn meanfield_matches_ode_oracle() {
        for ((wf, g, f, ga), points) in ODE_BATTERY {
            let p = params(wf, g, f, ga);
            for (t, e) in points {
                let got = eb_meanfield_closed_form(t, &p).unwrap();
                assert!(rel(got, e) < 1e-9, "wf={wf} ga={ga} t={t}: {got} vs {e}");
            }
        }
    }

    #[test]
    fn offres_matches_ode_oracle() {
        for ((wf, g, f, ga), points) in ODE_BATTERY.into_iter().take(2) {
            let p = params(wf, g, f, ga);
            for (t, e) in points {
                let got = eb_offres(t, &p).unwrap();
                assert!(rel(got, e) < 1e-9, "ga={ga} t={t}: {got} vs {e}");
            }
        }
    }

    #[test]
    fn offres_continuous_through_critical_damping() {
        let g = 0.2;
        let at = |ga: f64| eb_offres(12.0, &params(1.0, g, 0.1, ga)).unwrap();
        let crit = at(4.0 * g);
        assert!(crit.is_finite());
        assert!((at(4.0 * g + 1e-9) - crit).abs() < 1e-8);
        assert!((at(4.0 * g - 1e-9) - crit).abs() < 1e-8);
        // B4 cannot evaluate the degenerate point but agrees just beside it.
        let near = eb_meanfield_closed_form(12.0, &params(1.0, g, 0.1, 4.0 * g + 1e-4)).unwrap();
        assert!((near - at(4.0 * g + 1e-4)).abs() < 1e-8);
    }

    #[test]
    fn offres_peak_location() {
        let p = params(1.0, 0.2, 0.1, 0.05);
        let (t_peak, e_peak) = (0..=4000)
            .map(|k| k as f64 * 0.01)
            .map(|t| (t, eb_offres(t, &p).unwrap()))
            .fold((0.0, f64::MIN), |acc, x| if x.1 > acc.1 { x } else { acc });
        assert!((t_peak - 15.74).abs() < 0.05, "{t_peak}");
        assert!((e_peak - 0.8294).abs() < 1e-3, "{e_peak}");
    }

    #[test]
    fn simple_charge_matches_ode_oracle() {
        // (δ, γ, F) -> |a(t)|² at t = 10 and 30.
        let cases = [
            (0.1, 0.05, [7.199575923782643e-01, 2.031443619638316e+00]),
            (0.0, 0.05, [7.828654971171043e-01, 4.454352874662392e+00]),
            (0.3, 0.0, [4.422205548000648e-01, 4.246956137521435e-01]),
        ];
        for (delta, ga, expected) in cases {
            let p = params(1.0 - delta, 0.2, 0.1, ga);
            for (t, e) in [10.0, 30.0].into_iter().zip(expected) {
                let got = eb_simple_charge(t, &p).unwrap();
                assert!(rel(got, e) < 1e-10, "δ={delta} t={t}: {got} vs {e}");
            }
        }
        assert!(eb_simple_charge(1.0, &params(1.0, 0.2, 0.1, 0.0)).is_err());
    }

    #[test]
    fn simple_discharge_is_exponential() {
        let p = params(0.95, 0.2, 0.1, 0.05);
        let e0 = eb_simple_charge(80.0, &p).unwrap();
        assert_eq!(eb_simple_discharge(0.0, 80.0, &p).unwrap(), e0);
        let e = eb_simple_discharge(20.0, 80.0, &p).unwrap();
        assert!(rel(e, e0 * (-1.0f64).exp()) < 1e-14);
        assert!(eb_simple_discharge(-1.0, 80.0, &p).is_err());
    }

    #[test]
    fn simple_charge_late_time_rate_is_half_the_discharge_rate() {
        let p = params(1.0, 0.2, 0.1, 0.05);
        let e_inf = 4.0 * p.drive * p.drive / (p.gamma_a * p.gamma_a);
        // On resonance E(t) = E∞ (1 − e^{−γt/2})², so E∞ − E ≈ 2E∞ e^{−γt/2}.
        let gap = |t: f64| e_inf - eb_simple_charge(t, &p).unwrap();
        let charge_rate = -(gap(400.0).ln() - gap(300.0).ln()) / 100.0;
        let d = |t: f64| eb_simple_discharge(t, 300.0, &p).unwrap();
        let discharge_rate = -(d(100.0).ln() - d(0.0).ln()) / 100.0;
        assert!(rel(charge_rate, p.gamma_a / 2.0) < 1e-3);
        assert!(rel(discharge_rate, p.gamma_a) < 1e-12);
    }

    #[test]
    fn dissipative_reduces_to_lossless() {
        for d in [0.01, 0.03, -0.05] {
            let p = ModelParams::default().with_global_detuning(d);
            let p0 = ModelParams { gamma_a: 0.0, ..p };
            for t in [0.0, 3.0, 50.0, 321.8] {
                let a = eb_onres_dissipative(t, &p0).unwrap();
                let b = eb_onres_lossless(t, &p0).unwrap();
                assert!((a - b).abs() < 1e-10 * b.abs().max(1.0), "Δ={d} t={t}");
                let tiny = ModelParams { gamma_a: 1e-9, ..p };
                assert!((eb_onres_dissipative(t, &tiny).unwrap() - b).abs() < 1e-5);
            }
        }
    }

    #[test]
    fn dissipative_steady_state_on_resonance() {
        let p = ModelParams::default().with_global_detuning(0.0);
        let e = eb_onres_dissipative(4000.0, &p).unwrap();
        let target = 4.0 * p.drive * p.drive / (p.gamma_a * p.gamma_a);
        assert!(rel(e, target) < 1e-12, "{e}");
        let lossless = ModelParams { gamma_a: 0.0, ..p };
        assert!(eb_onres_dissipative(1.0, &lossless).is_err());
    }

    #[test]
    fn lossless_has_nonzero_initial_value() {
        let p = ModelParams {
            gamma_a: 0.0,
            ..ModelParams::default()
        }
        .with_global_detuning(0.01);
        let d = 0.01;
        let expected = -p.drive * p.drive / (2.0 * d * (d + 2.0 * p.g));
        assert!(rel(eb_onres_lossless(0.0, &p).unwrap(), expected) < 1e-10);
        assert!(eb_onres_lossless(1.0, &p.with_global_detuning(0.0)).is_err());
        assert!(eb_onres_lossless(1.0, &p.with_global_detuning(-0.4)).is_err());
    }

    #[test]
    fn small_detuning_limits() {
        let p = ModelParams {
            gamma_a: 0.0,
            ..ModelParams::default()
        };
        let at0 = p.with_global_detuning(0.0);
        assert!(rel(eb_onres_small_detuning(7.0, &at0).unwrap(), 0.01 * 49.0 / 4.0) < 1e-14);
        let near = p.with_global_detuning(1e-10);
        assert!(rel(eb_onres_small_detuning(7.0, &near).unwrap(), 0.01 * 49.0 / 4.0) < 1e-12);
        let p1 = p.with_global_detuning(0.01);
        let peak = eb_onres_small_detuning(std::f64::consts::PI / 0.01, &p1).unwrap();
        assert!(rel(peak, 100.0) < 1e-12);
    }

    #[test]
    fn coefficient_roots_and_initial_conditions() {
        let p = params(1.0 - 0.21, 0.2, 0.1, 0.0);
        let k = ClosedFormCoefficients::new(&p).unwrap();
        // Lossless: m1 = -i(δ - g), m2 = -i(δ + g).
        assert!((k.m1 - C64::new(0.0, -0.01)).norm() < 1e-12);
        assert!((k.m2 - C64::new(0.0, -0.41)).norm() < 1e-12);
        assert!(k.mean_b(0.0).norm() < 1e-14);
        let h = 1e-6;
        let deriv = (k.mean_b(h) - k.mean_b(-h)) / (2.0 * h);
        assert!(deriv.norm() < 1e-9);
        for m in [k.m1, k.m2] {
            let poly = m * m + C64::new(p.gamma_a / 2.0, 2.0 * p.delta()) * m
                - C64::new(p.delta().powi(2) - p.g * p.g, -p.gamma_a * p.delta() / 2.0);
            assert!(poly.norm() < 1e-14);
        }
        for p in [params(0.79, 0.2, 0.1, 0.05), params(0.3, 0.2, 0.1, 0.5)] {
            let k = ClosedFormCoefficients::new(&p).unwrap();
            assert!((k.c1 + k.c2 + k.forced_term).norm() < 1e-12);
            assert!((k.c1 * k.m1 + k.c2 * k.m2).norm() < 1e-12);
        }
    }

    #[test]
    fn coefficient_errors() {
        assert!(ClosedFormCoefficients::new(&params(1.0, 0.0, 0.1, 0.05)).is_err());
        assert!(ClosedFormCoefficients::new(&params(1.0, 0.2, 0.1, 0.8)).is_err());
        // Lossless drive exactly on a supermode.
        assert!(ClosedFormCoefficients::new(&params(0.8, 0.2, 0.1, 0.0)).is_err());
        assert!(mean_b_closed_form(1.0, &params(1.0, 0.0, 0.1, 0.05)).is_err());
        assert!(eb_offres(1.0, &params(1.0, 0.0, 0.1, 0.05)).is_err());
    }

    #[test]
    fn closed_form_ids_round_trip() {
        for c in ClosedForm::ALL {
            assert_eq!(c.id().parse::<ClosedForm>().unwrap(), c);
            assert_eq!(c.to_string(), c.id());
        }
        assert!("eq99".parse::<ClosedForm>().is_err());
        let p = params(1.0, 0.2, 0.1, 0.05);
        assert!(ClosedForm::Eq20.evaluate(1.0, &p, None).is_err());
        assert!(ClosedForm::Eq20.evaluate(1.0, &p, Some(10.0)).is_ok());
    }

    proptest! {
        #[test]
        fn offres_agrees_with_meanfield(
            g in 0.05f64..0.5,
            gamma in 0.0f64..2.0,
            f in 0.01f64..0.3,
            t in 0.0f64..150.0,
        ) {
            prop_assume!((gamma - 4.0 * g).abs() > 1e-3);
            let p = params(1.0, g, f, gamma);
            let a = eb_offres(t, &p).unwrap();
            let b = eb_meanfield_closed_form(t, &p).unwrap();
            prop_assert!((a - b).abs() < 1e-9 * (f * f / (g * g)).max(1.0));
        }

        #[test]
        fn energies_are_non_negative(
            g in 0.05f64..0.5,
            gamma in 0.001f64..1.0,
            wf in 0.5f64..1.5,
            t in 0.0f64..300.0,
        ) {
            let p = params(wf, g, 0.1, gamma);
            prop_assert!(eb_simple_charge(t, &p).unwrap() >= 0.0);
            prop_assert!(eb_onres_small_detuning(t, &p).unwrap() >= 0.0);
            if let Ok(e) = eb_meanfield_closed_form(t, &p) {
                prop_assert!(e >= -1e-12);
            }
        }
    }
}
