//! Cyclic Jacobi eigensolver for dense Hermitian matrices.
//!
//! Each rotation first removes the phase of the pivot `a[p,q]` by rescaling
//! basis vector `q`, then applies the usual real plane rotation that zeroes
//! the (now real) pivot. The combined unitary is accumulated into `V`.

use crate::linalg::CMatrix;
use crate::{Error, Result, C64};

/// Tolerance on `‖A − A†‖` (relative to `max(1, max|A_ij|)`) accepted as Hermitian.
pub const HERMITIAN_TOL: f64 = 1e-10;

const MAX_SWEEPS: usize = 100;

/// Eigen-decomposition `A = V Λ V†` of a Hermitian matrix.
#[derive(Debug, Clone)]
pub struct HermitianEig {
    /// Sorted ascending.
    pub eigenvalues: Vec<f64>,
    /// Unitary; column `k` pairs with `eigenvalues[k]`.
    pub eigenvectors: CMatrix,
}

impl HermitianEig {
    /// Rebuilds `V Λ V†`.
    pub fn reconstruct(&self) -> CMatrix {
        let n = self.eigenvalues.len();
        let v = &self.eigenvectors;
        CMatrix::from_fn(n, n, |i, j| {
            (0..n)
                .map(|k| v[(i, k)] * v[(j, k)].conj() * self.eigenvalues[k])
                .sum()
        })
    }

    pub fn eigenvector(&self, k: usize) -> Vec<C64> {
        let n = self.eigenvalues.len();
        (0..n).map(|i| self.eigenvectors[(i, k)]).collect()
    }
}

/// Full decomposition with eigenvectors.
pub fn hermitian_eig(a: &CMatrix) -> Result<HermitianEig> {
    let (values, vectors) = jacobi(a, true)?;
    Ok(HermitianEig {
        eigenvalues: values,
        eigenvectors: vectors.expect("vectors requested"),
    })
}

/// Eigenvalues only (ascending); skips accumulating the rotations.
pub fn hermitian_eigenvalues(a: &CMatrix) -> Result<Vec<f64>> {
    Ok(jacobi(a, false)?.0)
}

fn check_hermitian(a: &CMatrix) -> Result<()> {
    if !a.is_square() {
        return Err(Error::NotSquare {
            rows: a.rows(),
            cols: a.cols(),
        });
    }
    let scale = a.max_abs().max(1.0);
    let defect = a.hermiticity_defect();
    if defect > HERMITIAN_TOL * scale {
        return Err(Error::NotHermitian { defect });
    }
    Ok(())
}

fn jacobi(input: &CMatrix, want_vectors: bool) -> Result<(Vec<f64>, Option<CMatrix>)> {
    check_hermitian(input)?;
    let n = input.rows();
    let mut a = input.clone();
    a.hermitize();
    let mut v = want_vectors.then(|| CMatrix::identity(n));

    let total = a.norm();
    let threshold = (f64::EPSILON * total).powi(2).max(f64::MIN_POSITIVE);

    for _sweep in 0..MAX_SWEEPS {
        let off: f64 = (0..n)
            .flat_map(|i| ((i + 1)..n).map(move |j| (i, j)))
            .map(|(i, j)| a[(i, j)].norm_sqr())
            .sum();
        if off <= threshold {
            break;
        }
        for p in 0..n {
            for q in (p + 1)..n {
                let apq = a[(p, q)];
                let mag = apq.norm();
                if mag == 0.0 {
                    continue;
                }
                let app = a[(p, p)].re;
                let aqq = a[(q, q)].re;
                // Skip pivots already negligible against both diagonal entries.
                if mag < f64::EPSILON * 1e-3 * (app.abs() + aqq.abs()) {
                    a[(p, q)] = C64::new(0.0, 0.0);
                    a[(q, p)] = C64::new(0.0, 0.0);
                    continue;
                }
                let phase = apq / mag; // e^{iα}
                let theta = (aqq - app) / (2.0 * mag);
                let t = theta.signum() / (theta.abs() + (theta * theta + 1.0).sqrt());
                let c = 1.0 / (t * t + 1.0).sqrt();
                let s = t * c;
                // G = [[c, s], [-s e^{-iα}, c e^{-iα}]] on (p, q).
                let e = phase.conj();
                rotate_columns(&mut a, p, q, c, s, e);
                rotate_rows(&mut a, p, q, c, s, e);
                a[(p, q)] = C64::new(0.0, 0.0);
                a[(q, p)] = C64::new(0.0, 0.0);
                a[(p, p)].im = 0.0;
                a[(q, q)].im = 0.0;
                if let Some(v) = v.as_mut() {
                    rotate_columns(v, p, q, c, s, e);
                }
            }
        }
    }

    let off: f64 = (0..n)
        .flat_map(|i| ((i + 1)..n).map(move |j| (i, j)))
        .map(|(i, j)| a[(i, j)].norm_sqr())
        .sum();
    if off.sqrt() > 1e-12 * total.max(1.0) {
        return Err(Error::NoConvergence {
            sweeps: MAX_SWEEPS,
        });
    }

    let mut order: Vec<usize> = (0..n).collect();
    let diag: Vec<f64> = (0..n).map(|i| a[(i, i)].re).collect();
    order.sort_by(|&x, &y| diag[x].total_cmp(&diag[y]).then(x.cmp(&y)));
    let values = order.iter().map(|&k| diag[k]).collect();
    let vectors = v.map(|v| CMatrix::from_fn(n, n, |i, k| v[(i, order[k])]));
    Ok((values, vectors))
}

// M <- M G
fn rotate_columns(m: &mut CMatrix, p: usize, q: usize, c: f64, s: f64, e: C64) {
    let cols = m.cols();
    let data = m.as_mut_slice();
    for row in data.chunks_exact_mut(cols) {
        let mp = row[p];
        let mq = row[q] * e;
        row[p] = mp * c - mq * s;
        row[q] = mp * s + mq * c;
    }
}

// M <- G† M
fn rotate_rows(m: &mut CMatrix, p: usize, q: usize, c: f64, s: f64, e: C64) {
    let cols = m.cols();
    let ec = e.conj();
    let data = m.as_mut_slice();
    for k in 0..cols {
        let mp = data[p * cols + k];
        let mq = data[q * cols + k] * ec;
        data[p * cols + k] = mp * c - mq * s;
        data[q * cols + k] = mp * s + mq * c;
    }
}
