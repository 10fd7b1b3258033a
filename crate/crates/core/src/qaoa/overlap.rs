use crate::error::{Error, Result};
use crate::simkernel::{GroundManifold, ManifoldStates, StateVector};

/// `Σ_k |<φ_k|ψ>|²` over the manifold.
pub fn squared_overlap(v: &StateVector, manifold: &GroundManifold) -> Result<f64> {
    if v.n_qubits() != manifold.n_qubits() {
        return Err(Error::Shape(format!(
            "{}-qubit state against a {}-qubit manifold",
            v.n_qubits(),
            manifold.n_qubits()
        )));
    }
    match &manifold.states {
        ManifoldStates::Indicators { states, .. } => {
            Ok(states.iter().map(|&b| v.amplitude_of(b).norm_sqr()).sum())
        }
        ManifoldStates::Vectors(members) => {
            let full;
            let v = if v.basis().is_full() {
                v
            } else {
                full = v.to_full();
                &full
            };
            let mut total = 0.0;
            for phi in members {
                total += if phi.basis() == v.basis() {
                    phi.inner(v)?.norm_sqr()
                } else {
                    phi.to_full().inner(v)?.norm_sqr()
                };
            }
            Ok(total)
        }
    }
}
