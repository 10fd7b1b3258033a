//! Ground-state manifolds of diagonal and Pauli-sum Hamiltonians.

use std::sync::Arc;

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::dense::{DenseHermitian, DENSE_DIM_LIMIT};
use super::krylov::lanczos_lowest;
use super::operator::{CompiledPauli, HermitianOperator};
use super::state::StateVector;
use crate::basis::{Basis, SectorBasis};
use crate::error::{Error, Result};
use crate::hamcore::{DiagonalOperator, PauliSum};

/// How close to the lowest eigenvalue a level must be to count as degenerate.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum DegeneracyTol {
    Absolute(f64),
    /// Scaled by `max(1, |E_0|)`.
    Relative(f64),
}

impl DegeneracyTol {
    /// Default for integer-valued classical costs.
    pub const DIAGONAL: DegeneracyTol = DegeneracyTol::Absolute(1e-8);
    /// Default for electronic Hamiltonians.
    pub const CHEMISTRY: DegeneracyTol = DegeneracyTol::Relative(1e-6);

    pub fn threshold(self, e0: f64) -> f64 {
        match self {
            DegeneracyTol::Absolute(t) => t,
            DegeneracyTol::Relative(t) => t * e0.abs().max(1.0),
        }
    }
}

#[derive(Clone, Debug)]
pub enum ManifoldStates {
    /// Computational basis states of a diagonal Hamiltonian.
    Indicators {
        n_qubits: usize,
        states: Vec<u64>,
    },
    Vectors(Vec<StateVector>),
}

/// Orthonormal basis of the lowest eigenspace.
#[derive(Clone, Debug)]
pub struct GroundManifold {
    pub energy: f64,
    pub degeneracy_tol: DegeneracyTol,
    pub states: ManifoldStates,
}

impl GroundManifold {
    pub fn len(&self) -> usize {
        match &self.states {
            ManifoldStates::Indicators { states, .. } => states.len(),
            ManifoldStates::Vectors(v) => v.len(),
        }
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn n_qubits(&self) -> usize {
        match &self.states {
            ManifoldStates::Indicators { n_qubits, .. } => *n_qubits,
            ManifoldStates::Vectors(v) => v[0].n_qubits(),
        }
    }

    /// The manifold as explicit full-register vectors.
    pub fn state_vectors(&self) -> Result<Vec<StateVector>> {
        match &self.states {
            ManifoldStates::Indicators { n_qubits, states } => states
                .iter()
                .map(|&b| StateVector::basis_state(*n_qubits, b))
                .collect(),
            ManifoldStates::Vectors(v) => Ok(v.iter().map(|s| s.to_full()).collect()),
        }
    }
}

/// Either kind of Hamiltonian accepted by [`ground_states`].
#[derive(Clone, Copy, Debug)]
pub enum HamiltonianRef<'a> {
    Pauli(&'a PauliSum),
    Diagonal(&'a DiagonalOperator),
}

/// Ground manifold over the full register.
pub fn ground_states(h: HamiltonianRef<'_>, tol: DegeneracyTol) -> Result<GroundManifold> {
    match h {
        HamiltonianRef::Pauli(p) => ground_states_pauli(p, tol, None),
        HamiltonianRef::Diagonal(d) => Ok(ground_states_diagonal(d, tol)),
    }
}

/// Exact scan of a diagonal.
pub fn ground_states_diagonal(d: &DiagonalOperator, tol: DegeneracyTol) -> GroundManifold {
    let e0 = d.min();
    GroundManifold {
        energy: e0,
        degeneracy_tol: tol,
        states: ManifoldStates::Indicators {
            n_qubits: d.n_qubits(),
            states: d.argmin_states(tol.threshold(e0)),
        },
    }
}

/// Lowest eigenspace of a Hermitian Pauli sum, optionally within a sector.
/// Dense eigendecomposition up to dimension 2^10, deflated Lanczos above.
/// Returned vectors live in the full register.
pub fn ground_states_pauli(
    h: &PauliSum,
    tol: DegeneracyTol,
    sector: Option<&Arc<SectorBasis>>,
) -> Result<GroundManifold> {
    h.ensure_hermitian()?;
    let basis = match sector {
        Some(s) => Basis::Sector(s.clone()),
        None => Basis::Full,
    };
    let op = CompiledPauli::with_basis(h, basis.clone())?;
    let n = h.n_qubits();
    let wrap = |amps: Vec<Complex64>| -> Result<StateVector> {
        Ok(StateVector::new(n, amps, basis.clone())?.to_full())
    };

    if op.dim() <= DENSE_DIM_LIMIT {
        let dense = DenseHermitian::from_operator(&op)?;
        let e0 = dense.eigenvalues()[0];
        let thr = tol.threshold(e0);
        let states = dense
            .eigenvalues()
            .iter()
            .take_while(|&&e| e - e0 <= thr)
            .enumerate()
            .map(|(k, _)| wrap(dense.eigenvector(k)))
            .collect::<Result<Vec<_>>>()?;
        return Ok(GroundManifold {
            energy: e0,
            degeneracy_tol: tol,
            states: ManifoldStates::Vectors(states),
        });
    }

    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
    let mut random_start = || -> Vec<Complex64> {
        (0..op.dim())
            .map(|_| Complex64::new(rng.random::<f64>() - 0.5, rng.random::<f64>() - 0.5))
            .collect()
    };
    let max_dim = 120.min(op.dim());
    let (e0, v0) = lanczos_lowest(&op, &random_start(), &[], max_dim, 1e-9, 200)?;
    let thr = tol.threshold(e0);
    let mut found = vec![v0];
    while found.len() < op.dim() {
        let (e, v) = lanczos_lowest(&op, &random_start(), &found, max_dim, 1e-9, 200)?;
        if e - e0 > thr {
            break;
        }
        if e < e0 - thr {
            return Err(Error::Convergence {
                what: "Lanczos ground state (missed lower level)",
                residual: e0 - e,
            });
        }
        found.push(v);
    }
    Ok(GroundManifold {
        energy: e0,
        degeneracy_tol: tol,
        states: ManifoldStates::Vectors(found.into_iter().map(wrap).collect::<Result<_>>()?),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn z_has_ground_state_one() {
        let h = PauliSum::from_letters([(1.0, "Z")]).unwrap();
        let g = ground_states_pauli(&h, DegeneracyTol::Absolute(1e-8), None).unwrap();
        assert!((g.energy + 1.0).abs() < 1e-14);
        assert_eq!(g.len(), 1);
        let v = &g.state_vectors().unwrap()[0];
        assert!((v.amplitude_of(1).norm() - 1.0).abs() < 1e-14);
    }

    #[test]
    fn diagonal_degeneracy_is_collected() {
        let d = DiagonalOperator::new(2, vec![1.0, 0.0, 0.0, 2.0]).unwrap();
        let g = ground_states_diagonal(&d, DegeneracyTol::DIAGONAL);
        assert_eq!(g.len(), 2);
        assert_eq!(g.energy, 0.0);
    }

    #[test]
    fn relative_tolerance_scales_with_energy() {
        assert!((DegeneracyTol::Relative(1e-6).threshold(-100.0) - 1e-4).abs() < 1e-18);
        assert_eq!(DegeneracyTol::Relative(1e-6).threshold(0.1), 1e-6);
    }
}
