//! Continuous-time reference evolution under a linear interpolation
//! `H(t) = (1 - t/T)·H_B + (t/T)·H_C`.

use super::dense::DenseHermitian;
use super::krylov::{expm_krylov_amplitudes, KrylovOptions};
use super::operator::{Combination, HermitianOperator};
use super::state::StateVector;
use crate::error::{Error, Result};

/// Largest `dt · width` accepted.
pub const MAX_STEP_PHASE: f64 = 0.1;

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum Propagation {
    /// Krylov exponential of each midpoint Hamiltonian.
    #[default]
    Krylov,
    /// Dense eigendecomposition of each midpoint Hamiltonian (small registers only).
    Dense,
}

/// Smallest step count satisfying the step-phase precondition.
pub fn min_steps(
    cost: &dyn HermitianOperator,
    mixer: &dyn HermitianOperator,
    total_time: f64,
) -> usize {
    let width = cost
        .spectral_width_bound()
        .max(mixer.spectral_width_bound());
    ((total_time.abs() * width / MAX_STEP_PHASE).ceil() as usize).max(1)
}

/// Integrate `i d|ψ>/dt = H(t)|ψ>` from `initial` over `[0, total_time]` with
/// `steps` exponential-midpoint steps.
pub fn continuous_evolve(
    cost: &dyn HermitianOperator,
    mixer: &dyn HermitianOperator,
    initial: &StateVector,
    total_time: f64,
    steps: usize,
    method: Propagation,
    opts: KrylovOptions,
) -> Result<StateVector> {
    if cost.basis() != initial.basis() || mixer.basis() != initial.basis() {
        return Err(Error::Shape(
            "operators and state use different bases".into(),
        ));
    }
    if total_time == 0.0 {
        return Ok(initial.clone());
    }
    if total_time < 0.0 {
        return Err(Error::InvalidArgument(
            "total time must be non-negative".into(),
        ));
    }
    if steps == 0 {
        return Err(Error::InvalidArgument(
            "at least one step is required".into(),
        ));
    }
    let dt = total_time / steps as f64;
    let width = cost
        .spectral_width_bound()
        .max(mixer.spectral_width_bound());
    if dt * width >= MAX_STEP_PHASE {
        return Err(Error::InvalidArgument(format!(
            "{steps} steps too few: dt·width = {:.3} (need < {MAX_STEP_PHASE}, i.e. at least {} steps)",
            dt * width,
            min_steps(cost, mixer, total_time)
        )));
    }
    let mut amps = initial.amplitudes().to_vec();
    for k in 0..steps {
        let s = (k as f64 + 0.5) / steps as f64;
        let h = Combination::new(vec![(1.0 - s, mixer), (s, cost)])?;
        amps = match method {
            Propagation::Krylov => {
                expm_krylov_amplitudes(&h, dt, &amps, opts).map_err(|e| Error::Step {
                    step: k,
                    source: Box::new(e),
                })?
            }
            Propagation::Dense => {
                let dense = DenseHermitian::from_operator(&h)?;
                dense.exp_apply(dt, &mut amps);
                amps
            }
        };
    }
    StateVector::new(initial.n_qubits(), amps, initial.basis().clone())
}
