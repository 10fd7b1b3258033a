//! Matrix-free statevector engine.

pub mod apply;
pub mod continuous;
pub mod dense;
pub mod ground;
pub mod krylov;
pub mod operator;
pub mod state;

pub use apply::{apply_diagonal_phase, apply_operator, apply_pauli_sum, apply_x_mixer};
pub use continuous::{continuous_evolve, min_steps, Propagation};
pub use dense::{DenseHermitian, DENSE_DIM_LIMIT};
pub use ground::{
    ground_states, ground_states_diagonal, ground_states_pauli, DegeneracyTol, GroundManifold,
    HamiltonianRef, ManifoldStates,
};
pub use krylov::{expm_krylov, expm_krylov_amplitudes, KrylovOptions};
pub use operator::{expectation, Combination, CompiledPauli, HermitianOperator, TransverseField};
pub use state::StateVector;
