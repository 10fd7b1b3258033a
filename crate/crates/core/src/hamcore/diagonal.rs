use std::sync::Arc;

use super::pauli::PauliSum;
use crate::basis::{Basis, SectorBasis};
use crate::error::{Error, Result};

/// Real operator that is diagonal in the computational basis.
#[derive(Clone, Debug, PartialEq)]
pub struct DiagonalOperator {
    n_qubits: usize,
    values: Vec<f64>,
    basis: Basis,
}

impl DiagonalOperator {
    pub fn new(n_qubits: usize, values: Vec<f64>) -> Result<Self> {
        Self::with_basis(n_qubits, values, Basis::Full)
    }

    pub fn with_basis(n_qubits: usize, values: Vec<f64>, basis: Basis) -> Result<Self> {
        let expected = basis.dim(n_qubits);
        if values.len() != expected {
            return Err(Error::Shape(format!(
                "diagonal of length {} for a basis of dimension {expected}",
                values.len()
            )));
        }
        Ok(Self {
            n_qubits,
            values,
            basis,
        })
    }

    /// Evaluate `f` on every computational state of an `n_qubits` register.
    pub fn from_fn(n_qubits: usize, f: impl Fn(u64) -> f64) -> Result<Self> {
        if n_qubits > 30 {
            return Err(Error::Capacity {
                what: "dense diagonal",
                requested: n_qubits,
                limit: 30,
            });
        }
        Self::new(n_qubits, (0..1u64 << n_qubits).map(f).collect())
    }

    pub fn constant(n_qubits: usize, c: f64) -> Result<Self> {
        Self::from_fn(n_qubits, |_| c)
    }

    pub fn n_qubits(&self) -> usize {
        self.n_qubits
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn basis(&self) -> &Basis {
        &self.basis
    }

    /// Value on computational state `b`, if `b` is in this operator's basis.
    pub fn value_at(&self, b: u64) -> Option<f64> {
        self.basis
            .position(b, self.n_qubits)
            .map(|i| self.values[i])
    }

    pub fn min(&self) -> f64 {
        self.values.iter().copied().fold(f64::INFINITY, f64::min)
    }

    pub fn max(&self) -> f64 {
        self.values
            .iter()
            .copied()
            .fold(f64::NEG_INFINITY, f64::max)
    }

    /// Computational states whose value lies within `tol` of the minimum.
    pub fn argmin_states(&self, tol: f64) -> Vec<u64> {
        let m = self.min();
        self.values
            .iter()
            .enumerate()
            .filter(|(_, &v)| v - m <= tol)
            .map(|(i, _)| self.basis.state(i))
            .collect()
    }

    /// Restriction of a full-register diagonal to a sector.
    pub fn restrict(&self, sector: &Arc<SectorBasis>) -> Result<Self> {
        if !self.basis.is_full() {
            return Err(Error::Mode("diagonal is already sector-restricted".into()));
        }
        if sector.n_qubits() != self.n_qubits {
            return Err(Error::Shape("sector register size differs".into()));
        }
        let values = sector
            .states()
            .iter()
            .map(|&b| self.values[b as usize])
            .collect();
        Self::with_basis(self.n_qubits, values, Basis::Sector(sector.clone()))
    }

    pub fn scaled(&self, factor: f64) -> Self {
        Self {
            n_qubits: self.n_qubits,
            values: self.values.iter().map(|v| v * factor).collect(),
            basis: self.basis.clone(),
        }
    }
}

/// Diagonal of a Hermitian Pauli sum: `values[b] = <b|h|b>`.
pub fn diagonal_part(h: &PauliSum) -> Result<DiagonalOperator> {
    h.ensure_hermitian()?;
    let diag_terms: Vec<(f64, u64)> = h
        .terms()
        .iter()
        .filter(|(_, s)| s.is_diagonal())
        .map(|(c, s)| (c.re, s.z_mask()))
        .collect();
    DiagonalOperator::from_fn(h.n_qubits(), |b| {
        diag_terms
            .iter()
            .map(|&(c, z)| if (b & z).count_ones() & 1 == 1 { -c } else { c })
            .sum()
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_complex::Complex64;

    #[test]
    fn x_has_no_diagonal() {
        let h = PauliSum::from_letters([(2.0, "Z"), (3.0, "X")]).unwrap();
        assert_eq!(diagonal_part(&h).unwrap().values(), &[2.0, -2.0]);
    }

    #[test]
    fn identity_is_constant() {
        let h = PauliSum::identity(3, 1.5).unwrap();
        assert!(diagonal_part(&h)
            .unwrap()
            .values()
            .iter()
            .all(|&v| v == 1.5));
    }

    #[test]
    fn non_hermitian_input_rejected() {
        let h = PauliSum::from_letters([(Complex64::new(0.0, 1.0), "Z")]).unwrap();
        assert!(matches!(diagonal_part(&h), Err(Error::NotHermitian(_))));
    }

    #[test]
    fn wrong_length_is_shape_error() {
        assert!(DiagonalOperator::new(2, vec![0.0; 3]).is_err());
    }

    #[test]
    fn restriction_picks_sector_values() {
        let d = DiagonalOperator::from_fn(3, |b| b as f64).unwrap();
        let s = Arc::new(SectorBasis::hamming_weight(3, 2).unwrap());
        let r = d.restrict(&s).unwrap();
        assert_eq!(r.values(), &[3.0, 5.0, 6.0]);
        assert_eq!(r.value_at(5), Some(5.0));
        assert_eq!(r.value_at(1), None);
        assert_eq!(r.argmin_states(1e-9), vec![3]);
    }
}
