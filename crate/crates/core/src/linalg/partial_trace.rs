use crate::linalg::CMatrix;
use crate::system::{CompositeSystem, ModeId};
use crate::{Error, Result, C64};

/// Reduced density matrix of `keep`, tracing out every other mode.
pub fn partial_trace(rho: &CMatrix, system: &CompositeSystem, keep: ModeId) -> Result<CMatrix> {
    let dim = system.dim();
    if rho.shape() != (dim, dim) {
        return Err(Error::DimensionMismatch {
            expected: dim,
            found: rho.rows().max(rho.cols()),
        });
    }
    let k = system.position(keep)?;
    let (before, d, after) = system.split_at(k);
    let mut out = CMatrix::zeros(d, d);
    // index = (b · d + i) · after + a
    for i in 0..d {
        for j in 0..d {
            let mut acc = C64::new(0.0, 0.0);
            for b in 0..before {
                let row0 = (b * d + i) * after;
                let col0 = (b * d + j) * after;
                for a in 0..after {
                    acc += rho[(row0 + a, col0 + a)];
                }
            }
            out[(i, j)] = acc;
        }
    }
    Ok(out)
}
