//! Matrix-free Hermitian operators acting on amplitude slices.

use num_complex::Complex64;

use crate::basis::Basis;
use crate::error::{Error, Result};
use crate::hamcore::pauli::XGroup;
use crate::hamcore::{DiagonalOperator, PauliSum};

/// A Hermitian operator that can be applied to amplitudes in a given basis.
pub trait HermitianOperator: Sync {
    fn n_qubits(&self) -> usize;

    fn basis(&self) -> &Basis;

    /// `out = H v`; `out` is overwritten.
    fn apply_into(&self, v: &[Complex64], out: &mut [Complex64]);

    /// Upper bound on `λ_max - λ_min`.
    fn spectral_width_bound(&self) -> f64;

    fn dim(&self) -> usize {
        self.basis().dim(self.n_qubits())
    }
}

/// A Pauli sum compiled into X-mask groups for repeated application.
#[derive(Clone, Debug)]
pub struct CompiledPauli {
    n_qubits: usize,
    groups: Vec<XGroup>,
    basis: Basis,
    width: f64,
}

impl CompiledPauli {
    pub fn new(h: &PauliSum) -> Result<Self> {
        Self::with_basis(h, Basis::Full)
    }

    /// Compile for a sector basis. The caller is responsible for `h` preserving it;
    /// amplitude that would leave the sector is discarded.
    pub fn with_basis(h: &PauliSum, basis: Basis) -> Result<Self> {
        h.ensure_hermitian()?;
        if basis.is_full() && h.n_qubits() > 30 {
            return Err(Error::Capacity {
                what: "full-register statevector",
                requested: h.n_qubits(),
                limit: 30,
            });
        }
        Ok(Self {
            n_qubits: h.n_qubits(),
            groups: h.x_groups(),
            basis,
            width: h.spectral_width_bound(),
        })
    }

    pub fn groups(&self) -> &[XGroup] {
        &self.groups
    }
}

impl HermitianOperator for CompiledPauli {
    fn n_qubits(&self) -> usize {
        self.n_qubits
    }

    fn basis(&self) -> &Basis {
        &self.basis
    }

    fn apply_into(&self, v: &[Complex64], out: &mut [Complex64]) {
        out.iter_mut().for_each(|o| *o = Complex64::new(0.0, 0.0));
        match &self.basis {
            Basis::Full => {
                for g in &self.groups {
                    let x = g.x_mask as usize;
                    for (c, o) in out.iter_mut().enumerate() {
                        let b = c ^ x;
                        let a = v[b];
                        if a.re != 0.0 || a.im != 0.0 {
                            *o += g.amplitude(b as u64) * a;
                        }
                    }
                }
            }
            Basis::Sector(s) => {
                for g in &self.groups {
                    for (i, &b) in s.states().iter().enumerate() {
                        if let Some(j) = s.position(b ^ g.x_mask) {
                            out[j] += g.amplitude(b) * v[i];
                        }
                    }
                }
            }
        }
    }

    fn spectral_width_bound(&self) -> f64 {
        self.width
    }
}

impl HermitianOperator for DiagonalOperator {
    fn n_qubits(&self) -> usize {
        DiagonalOperator::n_qubits(self)
    }

    fn basis(&self) -> &Basis {
        DiagonalOperator::basis(self)
    }

    fn apply_into(&self, v: &[Complex64], out: &mut [Complex64]) {
        for ((o, a), d) in out.iter_mut().zip(v).zip(self.values()) {
            *o = a * d;
        }
    }

    fn spectral_width_bound(&self) -> f64 {
        self.max() - self.min()
    }
}

/// `sign · Σ_k X_k` on the full register.
#[derive(Clone, Debug)]
pub struct TransverseField {
    n_qubits: usize,
    sign: f64,
    basis: Basis,
}

impl TransverseField {
    pub fn new(n_qubits: usize, sign: f64) -> Self {
        Self {
            n_qubits,
            sign,
            basis: Basis::Full,
        }
    }

    pub fn sign(&self) -> f64 {
        self.sign
    }
}

impl HermitianOperator for TransverseField {
    fn n_qubits(&self) -> usize {
        self.n_qubits
    }

    fn basis(&self) -> &Basis {
        &self.basis
    }

    fn apply_into(&self, v: &[Complex64], out: &mut [Complex64]) {
        for (c, o) in out.iter_mut().enumerate() {
            let mut acc = Complex64::new(0.0, 0.0);
            for k in 0..self.n_qubits {
                acc += v[c ^ (1 << k)];
            }
            *o = acc * self.sign;
        }
    }

    fn spectral_width_bound(&self) -> f64 {
        2.0 * self.n_qubits as f64
    }
}

/// Real linear combination `Σ w_i H_i` of operators on a common basis.
pub struct Combination<'a> {
    parts: Vec<(f64, &'a dyn HermitianOperator)>,
    scratch_dim: usize,
}

impl<'a> Combination<'a> {
    pub fn new(parts: Vec<(f64, &'a dyn HermitianOperator)>) -> Result<Self> {
        let first = parts
            .first()
            .ok_or_else(|| Error::InvalidArgument("empty operator combination".into()))?
            .1;
        for (_, op) in &parts[1..] {
            if op.n_qubits() != first.n_qubits() || op.basis() != first.basis() {
                return Err(Error::Shape(
                    "combined operators act on different bases".into(),
                ));
            }
        }
        Ok(Self {
            scratch_dim: first.dim(),
            parts,
        })
    }
}

impl HermitianOperator for Combination<'_> {
    fn n_qubits(&self) -> usize {
        self.parts[0].1.n_qubits()
    }

    fn basis(&self) -> &Basis {
        self.parts[0].1.basis()
    }

    fn apply_into(&self, v: &[Complex64], out: &mut [Complex64]) {
        let mut scratch = vec![Complex64::new(0.0, 0.0); self.scratch_dim];
        out.iter_mut().for_each(|o| *o = Complex64::new(0.0, 0.0));
        for (w, op) in &self.parts {
            if *w == 0.0 {
                continue;
            }
            op.apply_into(v, &mut scratch);
            for (o, s) in out.iter_mut().zip(&scratch) {
                *o += s * *w;
            }
        }
    }

    fn spectral_width_bound(&self) -> f64 {
        self.parts
            .iter()
            .map(|(w, op)| w.abs() * op.spectral_width_bound())
            .sum()
    }
}

/// `<v|H|v>` for a normalized `v`.
pub fn expectation(op: &dyn HermitianOperator, v: &[Complex64]) -> f64 {
    let mut hv = vec![Complex64::new(0.0, 0.0); v.len()];
    op.apply_into(v, &mut hv);
    v.iter().zip(&hv).map(|(a, b)| (a.conj() * b).re).sum()
}
