use crate::linalg::CMatrix;
use crate::C64;

/// Compressed-row copy of an operator, used on the integrator hot path.
///
/// Ladder operators and the model Hamiltonians have O(1) nonzeros per row, so
/// products with a dense density matrix cost O(nnz · n) instead of O(n³).
#[derive(Debug, Clone)]
pub struct SparseOp {
    n_rows: usize,
    n_cols: usize,
    row_ptr: Vec<usize>,
    col_idx: Vec<usize>,
    values: Vec<C64>,
}

impl SparseOp {
    pub fn from_dense(m: &CMatrix) -> Self {
        let mut row_ptr = Vec::with_capacity(m.rows() + 1);
        let mut col_idx = Vec::new();
        let mut values = Vec::new();
        row_ptr.push(0);
        for i in 0..m.rows() {
            for (j, &v) in m.row(i).iter().enumerate() {
                if v.re != 0.0 || v.im != 0.0 {
                    col_idx.push(j);
                    values.push(v);
                }
            }
            row_ptr.push(col_idx.len());
        }
        Self {
            n_rows: m.rows(),
            n_cols: m.cols(),
            row_ptr,
            col_idx,
            values,
        }
    }

    pub fn nnz(&self) -> usize {
        self.values.len()
    }

    pub fn shape(&self) -> (usize, usize) {
        (self.n_rows, self.n_cols)
    }

    pub fn to_dense(&self) -> CMatrix {
        let mut m = CMatrix::zeros(self.n_rows, self.n_cols);
        for (i, j, v) in self.iter() {
            m[(i, j)] = v;
        }
        m
    }

    pub fn iter(&self) -> impl Iterator<Item = (usize, usize, C64)> + '_ {
        (0..self.n_rows).flat_map(move |i| {
            (self.row_ptr[i]..self.row_ptr[i + 1]).map(move |k| (i, self.col_idx[k], self.values[k]))
        })
    }

    /// `out += s · (self · x)`
    pub fn mul_dense_acc(&self, x: &CMatrix, s: C64, out: &mut CMatrix) {
        assert_eq!(self.n_cols, x.rows(), "shape mismatch");
        assert_eq!((self.n_rows, x.cols()), out.shape(), "shape mismatch");
        let p = x.cols();
        let xs = x.as_slice();
        let os = out.as_mut_slice();
        for i in 0..self.n_rows {
            let out_row = &mut os[i * p..(i + 1) * p];
            for k in self.row_ptr[i]..self.row_ptr[i + 1] {
                let v = self.values[k] * s;
                let j = self.col_idx[k];
                for (o, &b) in out_row.iter_mut().zip(&xs[j * p..(j + 1) * p]) {
                    *o += v * b;
                }
            }
        }
    }

    /// `self · x`
    pub fn mul_dense(&self, x: &CMatrix) -> CMatrix {
        let mut out = CMatrix::zeros(self.n_rows, x.cols());
        self.mul_dense_acc(x, C64::new(1.0, 0.0), &mut out);
        out
    }

    /// `out += s · (x · self†)`
    pub fn dense_mul_adjoint_acc(&self, x: &CMatrix, s: C64, out: &mut CMatrix) {
        assert_eq!(x.cols(), self.n_cols, "shape mismatch");
        assert_eq!((x.rows(), self.n_rows), out.shape(), "shape mismatch");
        let xc = x.cols();
        let oc = out.cols();
        let xs = x.as_slice();
        let os = out.as_mut_slice();
        // (x S†)[r, i] = Σ_j x[r, j] conj(S[i, j])
        for r in 0..x.rows() {
            let x_row = &xs[r * xc..(r + 1) * xc];
            let out_row = &mut os[r * oc..(r + 1) * oc];
            for (i, o) in out_row.iter_mut().enumerate() {
                let mut acc = C64::new(0.0, 0.0);
                for k in self.row_ptr[i]..self.row_ptr[i + 1] {
                    acc += x_row[self.col_idx[k]] * self.values[k].conj();
                }
                *o += acc * s;
            }
        }
    }
}
