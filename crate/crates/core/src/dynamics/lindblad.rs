use crate::dynamics::generator::{Hamiltonian, LindbladGenerator};
use crate::linalg::{CMatrix, SparseOp};
use crate::state::DensityState;
use crate::{Error, Result, C64};

const I: C64 = C64::new(0.0, 1.0);

/// `−i[H(t), ρ] + Σ_k r_k (L_k ρ L_k† − ½{L_k†L_k, ρ})`, evaluated densely.
pub fn lindblad_rhs(state: &DensityState, generator: &LindbladGenerator, t: f64) -> Result<CMatrix> {
    let rho = state.rho();
    if rho.rows() != generator.dim() {
        return Err(Error::DimensionMismatch {
            expected: generator.dim(),
            found: rho.rows(),
        });
    }
    let h = generator.hamiltonian().at(t);
    let mut out = h.commutator(rho).scale(-I);
    for c in generator.collapses() {
        let l = &c.op;
        let ld = l.dagger();
        let ldl = ld.matmul(l);
        let mut term = l.matmul(rho).matmul(&ld);
        term.axpy_real(-0.5, &ldl.anticommutator(rho));
        out.axpy_real(c.rate, &term);
    }
    Ok(out)
}

/// Sparse form of a generator for repeated evaluation on Hermitian inputs.
///
/// Uses `H_eff = H − (i/2) Σ r L†L`, so that the unitary and anticommutator
/// parts collapse to `−i X + i X†` with `X = H_eff ρ`.
#[derive(Debug, Clone)]
pub(crate) struct CompiledGenerator {
    dim: usize,
    h_eff: SparseOp,
    periodic: Option<(SparseOp, SparseOp, f64)>,
    jumps: Vec<(SparseOp, f64)>,
    scratch: CMatrix,
}

impl CompiledGenerator {
    pub fn new(generator: &LindbladGenerator) -> Self {
        let dim = generator.dim();
        let (mut h_eff, periodic) = match generator.hamiltonian() {
            Hamiltonian::Static(h) => (h.clone(), None),
            Hamiltonian::Periodic {
                base,
                drive,
                frequency,
            } => (
                base.clone(),
                Some((
                    SparseOp::from_dense(drive),
                    SparseOp::from_dense(&drive.dagger()),
                    *frequency,
                )),
            ),
        };
        let mut jumps = Vec::new();
        for c in generator.collapses() {
            if c.rate == 0.0 {
                continue;
            }
            let ldl = c.op.dagger().matmul(&c.op);
            h_eff.axpy(C64::new(0.0, -0.5 * c.rate), &ldl);
            jumps.push((SparseOp::from_dense(&c.op), c.rate));
        }
        Self {
            dim,
            h_eff: SparseOp::from_dense(&h_eff),
            periodic,
            jumps,
            scratch: CMatrix::zeros(dim, dim),
        }
    }

    /// Writes the generator applied to Hermitian `rho` at time `t` into `out`.
    pub fn apply(&mut self, rho: &CMatrix, t: f64, out: &mut CMatrix) {
        let n = self.dim;
        let one = C64::new(1.0, 0.0);
        let x = &mut self.scratch;
        x.as_mut_slice().fill(C64::new(0.0, 0.0));
        self.h_eff.mul_dense_acc(rho, one, x);
        if let Some((drive, drive_dag, freq)) = &self.periodic {
            let phase = C64::from_polar(1.0, freq * t);
            drive.mul_dense_acc(rho, phase, x);
            drive_dag.mul_dense_acc(rho, phase.conj(), x);
        }
        {
            let xs = x.as_slice();
            let os = out.as_mut_slice();
            for i in 0..n {
                for j in 0..n {
                    os[i * n + j] = -I * xs[i * n + j] + I * xs[j * n + i].conj();
                }
            }
        }
        for (l, rate) in &self.jumps {
            x.as_mut_slice().fill(C64::new(0.0, 0.0));
            l.mul_dense_acc(rho, one, x);
            l.dense_mul_adjoint_acc(x, C64::new(*rate, 0.0), out);
        }
    }
}
