//! Dense eigendecomposition route for small registers.

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;

use super::operator::HermitianOperator;
use crate::basis::Basis;
use crate::error::{Error, Result};

/// Largest basis dimension handled by dense eigendecomposition (2^10).
pub const DENSE_DIM_LIMIT: usize = 1 << 10;

/// Dense matrix of an operator, built column by column.
pub fn operator_matrix(op: &dyn HermitianOperator) -> DMatrix<Complex64> {
    let dim = op.dim();
    let mut m = DMatrix::<Complex64>::zeros(dim, dim);
    let mut e = vec![Complex64::new(0.0, 0.0); dim];
    let mut col = vec![Complex64::new(0.0, 0.0); dim];
    for j in 0..dim {
        e[j] = Complex64::new(1.0, 0.0);
        op.apply_into(&e, &mut col);
        for (i, v) in col.iter().enumerate() {
            m[(i, j)] = *v;
        }
        e[j] = Complex64::new(0.0, 0.0);
    }
    m
}

/// Eigenvalues (ascending) and eigenvectors of a Hermitian matrix.
pub fn hermitian_eigh(m: &DMatrix<Complex64>) -> (Vec<f64>, DMatrix<Complex64>) {
    let dim = m.nrows();
    // symmetrize away rounding noise before the solver sees it
    let herm = (m + m.adjoint()) * Complex64::new(0.5, 0.0);
    let eig = herm.symmetric_eigen();
    let mut order: Vec<usize> = (0..dim).collect();
    order.sort_by(|&a, &b| eig.eigenvalues[a].total_cmp(&eig.eigenvalues[b]));
    let values = order.iter().map(|&k| eig.eigenvalues[k]).collect();
    let mut vectors = DMatrix::<Complex64>::zeros(dim, dim);
    for (dst, &src) in order.iter().enumerate() {
        vectors.set_column(dst, &eig.eigenvectors.column(src));
    }
    (values, vectors)
}

/// Cached spectral decomposition `H = V diag(λ) V†`.
#[derive(Clone, Debug)]
pub struct DenseHermitian {
    n_qubits: usize,
    basis: Basis,
    values: Vec<f64>,
    vectors: DMatrix<Complex64>,
    vectors_adj: DMatrix<Complex64>,
}

impl DenseHermitian {
    pub fn from_operator(op: &dyn HermitianOperator) -> Result<Self> {
        let dim = op.dim();
        if dim > DENSE_DIM_LIMIT {
            return Err(Error::Capacity {
                what: "dense eigendecomposition",
                requested: op.n_qubits(),
                limit: DENSE_DIM_LIMIT.trailing_zeros() as usize,
            });
        }
        let (values, vectors) = hermitian_eigh(&operator_matrix(op));
        Ok(Self {
            n_qubits: op.n_qubits(),
            basis: op.basis().clone(),
            vectors_adj: vectors.adjoint(),
            values,
            vectors,
        })
    }

    pub fn n_qubits(&self) -> usize {
        self.n_qubits
    }

    pub fn basis(&self) -> &Basis {
        &self.basis
    }

    pub fn eigenvalues(&self) -> &[f64] {
        &self.values
    }

    pub fn eigenvector(&self, k: usize) -> Vec<Complex64> {
        self.vectors.column(k).iter().copied().collect()
    }

    /// `exp(-i·angle·H) v`, written into `v`.
    pub fn exp_apply(&self, angle: f64, v: &mut [Complex64]) {
        if angle == 0.0 {
            return;
        }
        let x = DVector::from_column_slice(v);
        let mut coeffs = &self.vectors_adj * x;
        for (c, &lam) in coeffs.iter_mut().zip(&self.values) {
            let (s, co) = (-angle * lam).sin_cos();
            *c *= Complex64::new(co, s);
        }
        let y = &self.vectors * coeffs;
        v.copy_from_slice(y.as_slice());
    }
}
