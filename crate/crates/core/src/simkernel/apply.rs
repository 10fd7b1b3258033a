//! Direct kernels: Pauli-sum products, diagonal phases, transverse-field rotations.

use num_complex::Complex64;

use super::operator::{CompiledPauli, HermitianOperator};
use super::state::StateVector;
use crate::basis::Basis;
use crate::error::{Error, Result};
use crate::hamcore::{DiagonalOperator, PauliSum};

/// `h · v`, term by term over bitmask flips. Sector states are handled by
/// dropping amplitude that leaves the sector.
pub fn apply_pauli_sum(h: &PauliSum, v: &StateVector) -> Result<StateVector> {
    if h.n_qubits() != v.n_qubits() {
        return Err(Error::Shape(format!(
            "{}-qubit operator on {}-qubit state",
            h.n_qubits(),
            v.n_qubits()
        )));
    }
    let mut out = vec![Complex64::new(0.0, 0.0); v.dim()];
    match v.basis() {
        Basis::Full => {
            for (c, s) in h.terms() {
                for (b, a) in v.amplitudes().iter().enumerate() {
                    out[b ^ s.x_mask() as usize] += c * s.phase_on(b as u64) * a;
                }
            }
        }
        basis @ Basis::Sector(_) => {
            // Non-Hermitian sums are legal here, so bypass the compiled path.
            for (c, s) in h.terms() {
                for (i, a) in v.amplitudes().iter().enumerate() {
                    let b = basis.state(i);
                    if let Some(j) = basis.position(b ^ s.x_mask(), v.n_qubits()) {
                        out[j] += c * s.phase_on(b) * a;
                    }
                }
            }
        }
    }
    StateVector::new(v.n_qubits(), out, v.basis().clone())
}

/// `H v` for any compiled operator.
pub fn apply_operator(op: &dyn HermitianOperator, v: &StateVector) -> Result<StateVector> {
    if op.n_qubits() != v.n_qubits() || op.basis() != v.basis() {
        return Err(Error::Shape("operator and state bases differ".into()));
    }
    let mut out = vec![Complex64::new(0.0, 0.0); v.dim()];
    op.apply_into(v.amplitudes(), &mut out);
    StateVector::new(v.n_qubits(), out, v.basis().clone())
}

/// Convenience wrapper that compiles `h` once.
pub fn compile(h: &PauliSum) -> Result<CompiledPauli> {
    CompiledPauli::new(h)
}

#[inline]
pub(crate) fn diagonal_phase_in_place(values: &[f64], angle: f64, amps: &mut [Complex64]) {
    if angle == 0.0 {
        return;
    }
    for (a, &d) in amps.iter_mut().zip(values) {
        let (s, c) = (-angle * d).sin_cos();
        *a *= Complex64::new(c, s);
    }
}

/// `amplitude[x] <- exp(-i·angle·d[x]) · amplitude[x]`.
pub fn apply_diagonal_phase(
    d: &DiagonalOperator,
    angle: f64,
    v: &StateVector,
) -> Result<StateVector> {
    if d.n_qubits() != v.n_qubits() || d.basis() != v.basis() {
        return Err(Error::Shape(format!(
            "diagonal of length {} on a state of dimension {}",
            d.values().len(),
            v.dim()
        )));
    }
    let mut out = v.clone();
    diagonal_phase_in_place(d.values(), angle, out.amplitudes_mut());
    Ok(out)
}

/// Apply `cos(angle)·I - i·sin(angle)·X` to every qubit of a full register.
pub(crate) fn x_rotation_in_place(n_qubits: usize, angle: f64, amps: &mut [Complex64]) {
    if angle == 0.0 {
        return;
    }
    let (s, c) = angle.sin_cos();
    let mis = Complex64::new(0.0, -s);
    for k in 0..n_qubits {
        let bit = 1usize << k;
        let block = bit << 1;
        for base in (0..amps.len()).step_by(block) {
            for lo in base..base + bit {
                let hi = lo | bit;
                let (a0, a1) = (amps[lo], amps[hi]);
                amps[lo] = a0 * c + a1 * mis;
                amps[hi] = a0 * mis + a1 * c;
            }
        }
    }
}

/// `exp(-i·angle·Σ_k X_k) v`.
pub fn apply_x_mixer(angle: f64, v: &StateVector) -> Result<StateVector> {
    if !v.basis().is_full() {
        return Err(Error::Mode(
            "the X mixer does not preserve particle-number sectors".into(),
        ));
    }
    let mut out = v.clone();
    x_rotation_in_place(v.n_qubits(), angle, out.amplitudes_mut());
    Ok(out)
}
