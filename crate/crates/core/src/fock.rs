//! Truncated Fock-space operators, canonical states and model Hamiltonians.

use crate::linalg::{kron, CMatrix};
use crate::params::ModelParams;
use crate::state::DensityState;
use crate::system::{CompositeSystem, ModeId};
use crate::{Error, Result, C64};

/// Ladder operator `a` on a `d`-level truncation: `a[n−1, n] = √n`.
pub fn annihilation(d: usize) -> Result<CMatrix> {
    if d < 2 {
        return Err(Error::InvalidSystem(format!("truncation {d} < 2")));
    }
    let mut a = CMatrix::zeros(d, d);
    for n in 1..d {
        a[(n - 1, n)] = C64::new((n as f64).sqrt(), 0.0);
    }
    Ok(a)
}

pub fn creation(d: usize) -> Result<CMatrix> {
    Ok(annihilation(d)?.dagger())
}

/// `diag(0, 1, …, d−1)`
pub fn number(d: usize) -> Result<CMatrix> {
    if d < 2 {
        return Err(Error::InvalidSystem(format!("truncation {d} < 2")));
    }
    Ok(CMatrix::from_diagonal(
        &(0..d).map(|n| C64::new(n as f64, 0.0)).collect::<Vec<_>>(),
    ))
}

/// Lifts a single-mode operator into the composite space (identity elsewhere).
pub fn embed(op: &CMatrix, system: &CompositeSystem, mode: ModeId) -> Result<CMatrix> {
    let k = system.position(mode)?;
    let d = system.modes()[k].1;
    if op.shape() != (d, d) {
        return Err(Error::DimensionMismatch {
            expected: d,
            found: op.rows(),
        });
    }
    let mut out: Option<CMatrix> = None;
    for (i, &(_, di)) in system.modes().iter().enumerate() {
        let factor = if i == k { op.clone() } else { CMatrix::identity(di) };
        out = Some(match out {
            None => factor,
            Some(acc) => kron(&acc, &factor),
        });
    }
    Ok(out.expect("system has at least one mode"))
}

/// `a` for `mode`, embedded in the composite space.
pub fn mode_annihilation(system: &CompositeSystem, mode: ModeId) -> Result<CMatrix> {
    embed(&annihilation(system.mode_dim(mode)?)?, system, mode)
}

/// `a†a` for `mode`, embedded in the composite space.
pub fn mode_number(system: &CompositeSystem, mode: ModeId) -> Result<CMatrix> {
    embed(&number(system.mode_dim(mode)?)?, system, mode)
}

fn require_two_mode(system: &CompositeSystem) -> Result<()> {
    if system.n_modes() != 2
        || !system.contains(ModeId::CHARGER)
        || !system.contains(ModeId::BATTERY)
    {
        return Err(Error::InvalidSystem(
            "expected a charger (A) and battery (B) two-mode system".into(),
        ));
    }
    Ok(())
}

fn require_single_mode(system: &CompositeSystem) -> Result<()> {
    if system.n_modes() != 1 {
        return Err(Error::InvalidSystem(format!(
            "expected a single-mode system, got {} modes",
            system.n_modes()
        )));
    }
    Ok(())
}

fn pure(system: &CompositeSystem, per_mode: Vec<Vec<C64>>) -> Result<DensityState> {
    let psi = per_mode
        .into_iter()
        .map(|v| CMatrix::from_vec(v.len(), 1, v))
        .reduce(|acc, v| kron(&acc, &v))
        .expect("system has at least one mode");
    DensityState::new(psi.matmul(&psi.dagger()), system.clone())
}

/// Every mode in its ground state.
pub fn vacuum_state(system: &CompositeSystem) -> Result<DensityState> {
    fock_state(system, &vec![0; system.n_modes()])
}

/// Product of number states, one level per mode.
pub fn fock_state(system: &CompositeSystem, levels: &[usize]) -> Result<DensityState> {
    if levels.len() != system.n_modes() {
        return Err(Error::DimensionMismatch {
            expected: system.n_modes(),
            found: levels.len(),
        });
    }
    let mut vecs = Vec::new();
    for (&(id, d), &n) in system.modes().iter().zip(levels) {
        if n >= d {
            return Err(Error::TruncationInadequate(format!(
                "level {n} does not fit mode {id} with truncation {d}"
            )));
        }
        let mut v = vec![C64::new(0.0, 0.0); d];
        v[n] = C64::new(1.0, 0.0);
        vecs.push(v);
    }
    pure(system, vecs)
}

/// Smallest truncation the coherent-state builder accepts for amplitude `alpha`.
pub fn coherent_truncation_floor(alpha: C64) -> f64 {
    let r = alpha.norm();
    r * r + 4.0 * r + 6.0
}

/// Product of coherent states with one amplitude per mode.
pub fn coherent_state(system: &CompositeSystem, amplitudes: &[C64]) -> Result<DensityState> {
    if amplitudes.len() != system.n_modes() {
        return Err(Error::DimensionMismatch {
            expected: system.n_modes(),
            found: amplitudes.len(),
        });
    }
    let mut vecs = Vec::new();
    for (&(id, d), &alpha) in system.modes().iter().zip(amplitudes) {
        let floor = coherent_truncation_floor(alpha);
        if (d as f64) < floor {
            return Err(Error::TruncationInadequate(format!(
                "coherent amplitude {alpha} on mode {id} needs d >= {floor:.1}, have {d}"
            )));
        }
        let mut v = Vec::with_capacity(d);
        let mut c = C64::new((-alpha.norm_sqr() / 2.0).exp(), 0.0);
        for n in 0..d {
            if n > 0 {
                c = c * alpha / (n as f64).sqrt();
            }
            v.push(c);
        }
        let norm = v.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
        vecs.push(v.into_iter().map(|z| z / norm).collect());
    }
    pure(system, vecs)
}

/// Product of (truncated, renormalised) thermal states, `p_n ∝ (n̄/(1+n̄))ⁿ`.
pub fn thermal_state(system: &CompositeSystem, mean_occupations: &[f64]) -> Result<DensityState> {
    if mean_occupations.len() != system.n_modes() {
        return Err(Error::DimensionMismatch {
            expected: system.n_modes(),
            found: mean_occupations.len(),
        });
    }
    let mut rho: Option<CMatrix> = None;
    for (&(_, d), &nbar) in system.modes().iter().zip(mean_occupations) {
        if !(nbar >= 0.0) || !nbar.is_finite() {
            return Err(Error::InvalidParameter(format!(
                "thermal occupation must be finite and >= 0, got {nbar}"
            )));
        }
        let ratio = nbar / (1.0 + nbar);
        let weights: Vec<f64> = (0..d).map(|n| ratio.powi(n as i32)).collect();
        let z: f64 = weights.iter().sum();
        let diag: Vec<C64> = weights.iter().map(|w| C64::new(w / z, 0.0)).collect();
        let m = CMatrix::from_diagonal(&diag);
        rho = Some(match rho {
            None => m,
            Some(acc) => kron(&acc, &m),
        });
    }
    DensityState::new(rho.expect("system has at least one mode"), system.clone())
}

/// Time-independent part `ω₀(a†a + b†b) + g(ab† + a†b)` and drive operator `F·a`
/// of the lab-frame Hamiltonian, which reads `H(t) = H₀ + e^{iω_f t} F a + e^{−iω_f t} F a†`.
pub fn lab_hamiltonian_parts(
    params: &ModelParams,
    system: &CompositeSystem,
) -> Result<(CMatrix, CMatrix)> {
    require_two_mode(system)?;
    let base = exchange_hamiltonian(params.omega0, params.g, system)?;
    let drive = mode_annihilation(system, ModeId::CHARGER)?.scale_real(params.drive);
    Ok((base, drive))
}

/// `ε(a†a + b†b) + g(ab† + a†b)`
fn exchange_hamiltonian(eps: f64, g: f64, system: &CompositeSystem) -> Result<CMatrix> {
    let a = mode_annihilation(system, ModeId::CHARGER)?;
    let b = mode_annihilation(system, ModeId::BATTERY)?;
    let (ad, bd) = (a.dagger(), b.dagger());
    let mut h = (&ad.matmul(&a) + &bd.matmul(&b)).scale_real(eps);
    h.axpy_real(g, &(&a.matmul(&bd) + &ad.matmul(&b)));
    Ok(h)
}

/// Lab-frame Hamiltonian at time `t`:
/// `ω₀a†a + ω₀b†b + g(ab† + a†b) + F(a e^{iω_f t} + a† e^{−iω_f t})`.
pub fn build_hamiltonian_lab(params: &ModelParams, system: &CompositeSystem, t: f64) -> Result<CMatrix> {
    let (mut h, drive) = lab_hamiltonian_parts(params, system)?;
    let phase = C64::from_polar(1.0, params.omega_f * t);
    h.axpy(phase, &drive);
    h.axpy(phase.conj(), &drive.dagger());
    Ok(h)
}

/// Hamiltonian in the frame co-rotating with the drive:
/// `δ(a†a + b†b) + g(ab† + a†b) + F(a + a†)` with `δ = ω₀ − ω_f`.
pub fn build_hamiltonian_rotating(params: &ModelParams, system: &CompositeSystem) -> Result<CMatrix> {
    require_two_mode(system)?;
    let mut h = exchange_hamiltonian(params.delta(), params.g, system)?;
    let a = mode_annihilation(system, ModeId::CHARGER)?;
    h.axpy_real(params.drive, &(&a + &a.dagger()));
    Ok(h)
}

/// Driven single oscillator in the rotating frame: `δ a†a + F(a + a†)`.
pub fn build_hamiltonian_simple(params: &ModelParams, system: &CompositeSystem) -> Result<CMatrix> {
    require_single_mode(system)?;
    let d = system.modes()[0].1;
    let a = annihilation(d)?;
    let mut h = number(d)?.scale_real(params.delta());
    h.axpy_real(params.drive, &(&a + &a.dagger()));
    Ok(h)
}

/// Lab-frame single oscillator split as `(ω₀ a†a, F a)`.
pub fn simple_lab_hamiltonian_parts(
    params: &ModelParams,
    system: &CompositeSystem,
) -> Result<(CMatrix, CMatrix)> {
    require_single_mode(system)?;
    let d = system.modes()[0].1;
    Ok((number(d)?.scale_real(params.omega0), annihilation(d)?.scale_real(params.drive)))
}

/// Normal-mode frequencies `(ω₀ + g, ω₀ − g)`.
pub fn supermode_frequencies(params: &ModelParams) -> (f64, f64) {
    (params.omega0 + params.g, params.omega0 - params.g)
}

/// Supermode ladder operators `C± = (a ± b)/√2`.
pub fn supermode_operators(system: &CompositeSystem) -> Result<(CMatrix, CMatrix)> {
    require_two_mode(system)?;
    let a = mode_annihilation(system, ModeId::CHARGER)?;
    let b = mode_annihilation(system, ModeId::BATTERY)?;
    let s = std::f64::consts::FRAC_1_SQRT_2;
    Ok(((&a + &b).scale_real(s), (&a - &b).scale_real(s)))
}

/// Bose–Einstein occupation `1/(e^{ω/kT} − 1)`; zero at `kT = 0`.
pub fn planck_occupation(omega_e: f64, kt: f64) -> Result<f64> {
    if !(omega_e > 0.0) || !omega_e.is_finite() {
        return Err(Error::InvalidParameter(format!("omega_e must be > 0, got {omega_e}")));
    }
    if !(kt >= 0.0) || !kt.is_finite() {
        return Err(Error::InvalidParameter(format!("kT must be >= 0, got {kt}")));
    }
    if kt == 0.0 {
        return Ok(0.0);
    }
    Ok(1.0 / (omega_e / kt).exp_m1())
}
