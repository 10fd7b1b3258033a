//! The alternating protocol `Π_j e^{-iβ_j H_B} e^{-iγ_j H_C}` and its
//! continuous-time counterpart.

use num_complex::Complex64;

use super::schedule::{schedule_angles, Schedule};
use crate::basis::Basis;
use crate::error::{Error, Result};
use crate::problems::{CostOperator, MixerSpec, ProblemInstance};
use crate::simkernel::apply::{diagonal_phase_in_place, x_rotation_in_place};
use crate::simkernel::{
    continuous_evolve, expm_krylov_amplitudes, min_steps, CompiledPauli, DenseHermitian,
    HermitianOperator, KrylovOptions, Propagation, StateVector, TransverseField, DENSE_DIM_LIMIT,
};

#[derive(Clone, Copy, Debug)]
pub struct EvolveOptions {
    /// Work in the instance's symmetry sector instead of the full register.
    pub sector_mode: bool,
    /// Exponentiate small non-diagonal operators through a cached eigendecomposition.
    pub dense: bool,
    pub krylov: KrylovOptions,
}

impl Default for EvolveOptions {
    fn default() -> Self {
        Self {
            sector_mode: false,
            dense: true,
            krylov: KrylovOptions::default(),
        }
    }
}

enum Kernel {
    Diagonal(Vec<f64>),
    /// `exp(-iθ·(-Σ X))`.
    NegativeX(usize),
    Dense(DenseHermitian),
    Krylov(CompiledPauli),
}

impl Kernel {
    fn apply(&self, angle: f64, amps: &mut Vec<Complex64>, opts: KrylovOptions) -> Result<()> {
        match self {
            Kernel::Diagonal(values) => diagonal_phase_in_place(values, angle, amps),
            Kernel::NegativeX(n) => x_rotation_in_place(*n, -angle, amps),
            Kernel::Dense(d) => d.exp_apply(angle, amps),
            Kernel::Krylov(op) => *amps = expm_krylov_amplitudes(op, angle, amps, opts)?,
        }
        Ok(())
    }
}

/// Final state of a protocol with per-step norm drift.
#[derive(Clone, Debug)]
pub struct QaoaRun {
    pub state: StateVector,
    pub step_drift: Vec<f64>,
}

impl QaoaRun {
    pub fn max_drift(&self) -> f64 {
        self.step_drift.iter().copied().fold(0.0, f64::max)
    }
}

/// Pre-compiled kernels for one instance, shareable across threads.
pub struct Evolver {
    n_qubits: usize,
    basis: Basis,
    cost_op: Box<dyn HermitianOperator + Send>,
    mixer_op: Box<dyn HermitianOperator + Send>,
    cost_kernel: Kernel,
    mixer_kernel: Kernel,
    initial: StateVector,
    opts: EvolveOptions,
}

fn pauli_kernel(op: &CompiledPauli, dense: bool) -> Result<Kernel> {
    if dense && op.dim() <= DENSE_DIM_LIMIT {
        Ok(Kernel::Dense(DenseHermitian::from_operator(op)?))
    } else {
        Ok(Kernel::Krylov(op.clone()))
    }
}

impl Evolver {
    pub fn new(instance: &ProblemInstance) -> Result<Self> {
        Self::with_options(instance, EvolveOptions::default())
    }

    pub fn with_options(instance: &ProblemInstance, opts: EvolveOptions) -> Result<Self> {
        let n = instance.n_qubits();
        let basis = match (opts.sector_mode, instance.sector_basis()) {
            (true, Some(s)) => Basis::Sector(s.clone()),
            (true, None) => {
                return Err(Error::Mode(
                    "sector mode needs an instance with a symmetry sector".into(),
                ))
            }
            (false, _) => Basis::Full,
        };
        let restrict_diag = |d: &crate::hamcore::DiagonalOperator| match &basis {
            Basis::Full => Ok(d.clone()),
            Basis::Sector(s) => d.restrict(s),
        };

        let (cost_op, cost_kernel): (Box<dyn HermitianOperator + Send>, Kernel) =
            match instance.cost() {
                CostOperator::Diagonal(d) => {
                    let d = restrict_diag(d)?;
                    (Box::new(d.clone()), Kernel::Diagonal(d.values().to_vec()))
                }
                CostOperator::Pauli(h) => {
                    let op = CompiledPauli::with_basis(h, basis.clone())?;
                    let kernel = pauli_kernel(&op, opts.dense)?;
                    (Box::new(op), kernel)
                }
            };
        let (mixer_op, mixer_kernel): (Box<dyn HermitianOperator + Send>, Kernel) =
            match instance.mixer() {
                MixerSpec::Diagonal(d) => {
                    let d = restrict_diag(d)?;
                    (Box::new(d.clone()), Kernel::Diagonal(d.values().to_vec()))
                }
                MixerSpec::TransverseX => (
                    Box::new(TransverseField::new(n, -1.0)),
                    Kernel::NegativeX(n),
                ),
                MixerSpec::Xy(h) => {
                    let op = CompiledPauli::with_basis(h, basis.clone())?;
                    let kernel = pauli_kernel(&op, opts.dense)?;
                    (Box::new(op), kernel)
                }
            };
        let initial = match &basis {
            Basis::Full => instance.initial_state().clone(),
            Basis::Sector(s) => instance.initial_state().restrict(s)?.0,
        };
        Ok(Self {
            n_qubits: n,
            basis,
            cost_op,
            mixer_op,
            cost_kernel,
            mixer_kernel,
            initial,
            opts,
        })
    }

    pub fn n_qubits(&self) -> usize {
        self.n_qubits
    }

    /// Working basis (full register or the instance's sector).
    pub fn basis(&self) -> &Basis {
        &self.basis
    }

    pub fn cost_operator(&self) -> &dyn HermitianOperator {
        self.cost_op.as_ref()
    }

    pub fn mixer_operator(&self) -> &dyn HermitianOperator {
        self.mixer_op.as_ref()
    }

    /// Apply the protocol to raw amplitudes in the working basis. The map is
    /// linear; norms are reported relative to the input norm.
    pub fn evolve_amplitudes(
        &self,
        s: &Schedule,
        start: &[Complex64],
    ) -> Result<(Vec<Complex64>, Vec<f64>)> {
        if start.len() != self.basis.dim(self.n_qubits) {
            return Err(Error::Shape(format!(
                "{} amplitudes for a working basis of dimension {}",
                start.len(),
                self.basis.dim(self.n_qubits)
            )));
        }
        let norm0 = start.iter().map(|a| a.norm_sqr()).sum::<f64>().sqrt();
        let angles = schedule_angles(s);
        let mut amps = start.to_vec();
        let mut drift = Vec::with_capacity(angles.len());
        for (j, (&g, &b)) in angles.gammas.iter().zip(&angles.betas).enumerate() {
            let step = |e: Error| Error::Step {
                step: j + 1,
                source: Box::new(e),
            };
            self.cost_kernel
                .apply(g, &mut amps, self.opts.krylov)
                .map_err(step)?;
            self.mixer_kernel
                .apply(b, &mut amps, self.opts.krylov)
                .map_err(step)?;
            if norm0 > 0.0 {
                let n = amps.iter().map(|a| a.norm_sqr()).sum::<f64>().sqrt();
                drift.push((n / norm0 - 1.0).abs());
            }
        }
        Ok((amps, drift))
    }

    /// Run the protocol from the instance's initial state. The result is
    /// always returned in the full register.
    pub fn evolve(&self, s: &Schedule) -> Result<QaoaRun> {
        let (amps, step_drift) = self.evolve_amplitudes(s, self.initial.amplitudes())?;
        let state = StateVector::new(self.n_qubits, amps, self.basis.clone())?.to_full();
        Ok(QaoaRun { state, step_drift })
    }

    pub fn min_continuous_steps(&self, total_time: f64) -> usize {
        min_steps(self.cost_op.as_ref(), self.mixer_op.as_ref(), total_time)
    }

    /// Continuous interpolation `(1 - t/T) H_B + (t/T) H_C` over `[0, T]`.
    pub fn continuous(
        &self,
        total_time: f64,
        steps: usize,
        method: Propagation,
    ) -> Result<StateVector> {
        Ok(continuous_evolve(
            self.cost_op.as_ref(),
            self.mixer_op.as_ref(),
            &self.initial,
            total_time,
            steps,
            method,
            self.opts.krylov,
        )?
        .to_full())
    }
}

/// Alternating evolution of the instance under `s`.
pub fn qaoa_evolve(instance: &ProblemInstance, s: &Schedule) -> Result<QaoaRun> {
    Evolver::new(instance)?.evolve(s)
}

/// Continuous-time reference for total time `T`; `steps = None` picks the
/// smallest step count meeting the step-size precondition.
pub fn continuous_limit(
    instance: &ProblemInstance,
    total_time: f64,
    steps: Option<usize>,
) -> Result<StateVector> {
    let ev = Evolver::new(instance)?;
    let steps = steps.unwrap_or_else(|| ev.min_continuous_steps(total_time) + 1);
    ev.continuous(total_time, steps, Propagation::Krylov)
}

/// Total time associated with a `(Δ, p)` protocol.
pub fn equivalent_time(delta: f64, p: usize) -> f64 {
    delta * (p + 1) as f64
}
