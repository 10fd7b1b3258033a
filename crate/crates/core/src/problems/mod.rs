//! Problem instances: cost Hamiltonian, mixer, initial state and symmetry sector.

mod chemistry;
mod ising;
mod manifest;
mod sat;

pub use chemistry::{build_chemistry_problem, hf_bitstring, ChemistryMixer};
pub use ising::{ising_cost, random_ising, IsingInstance, IsingJson};
pub use manifest::{read_manifest, write_manifest, Manifest};
pub use sat::{parse_dimacs, random_3sat, sat_cost, DimacsMode, Literal, SatFormula};

use std::sync::Arc;

use num_complex::Complex64;

use crate::basis::{Basis, SectorBasis, SymmetrySector};
use crate::error::{Error, Result};
use crate::hamcore::{DiagonalOperator, PauliString, PauliSum};
use crate::simkernel::{
    ground_states_diagonal, ground_states_pauli, DegeneracyTol, GroundManifold, ManifoldStates,
    StateVector,
};

/// Register size up to which sector preservation is checked against the dense matrix.
pub const DENSE_VALIDATION_LIMIT: usize = 10;

const UNIT_NORM_TOL: f64 = 1e-12;
const LEAK_TOL: f64 = 1e-12;

#[derive(Clone, Debug, PartialEq)]
pub enum CostOperator {
    Pauli(PauliSum),
    Diagonal(DiagonalOperator),
}

impl CostOperator {
    pub fn n_qubits(&self) -> usize {
        match self {
            CostOperator::Pauli(h) => h.n_qubits(),
            CostOperator::Diagonal(d) => d.n_qubits(),
        }
    }

    pub fn kind_name(&self) -> &'static str {
        match self {
            CostOperator::Pauli(_) => "pauli",
            CostOperator::Diagonal(_) => "diagonal",
        }
    }
}

/// The mixer Hamiltonian `H_B`.
#[derive(Clone, Debug, PartialEq)]
pub enum MixerSpec {
    Diagonal(DiagonalOperator),
    /// `H_B = -Σ_k X_k`, whose ground state is `|+...+>`.
    TransverseX,
    Xy(PauliSum),
}

impl MixerSpec {
    pub fn kind_name(&self) -> &'static str {
        match self {
            MixerSpec::Diagonal(_) => "diagonal",
            MixerSpec::TransverseX => "transverse_x",
            MixerSpec::Xy(_) => "xy",
        }
    }
}

pub fn x_mixer_spec(n_qubits: usize) -> Result<MixerSpec> {
    if n_qubits == 0 {
        return Err(Error::InvalidArgument(
            "X mixer needs at least one qubit".into(),
        ));
    }
    Ok(MixerSpec::TransverseX)
}

/// Complete-graph `Σ_{j<k} X_j X_k + Y_j Y_k`.
pub fn xy_mixer(n_qubits: usize) -> Result<PauliSum> {
    if n_qubits < 2 {
        return Err(Error::InvalidArgument(
            "XY mixer needs at least two qubits".into(),
        ));
    }
    let mut terms = Vec::with_capacity(n_qubits * (n_qubits - 1));
    for j in 0..n_qubits {
        for k in j + 1..n_qubits {
            let m = (1u64 << j) | (1u64 << k);
            terms.push((Complex64::new(1.0, 0.0), PauliString::new(n_qubits, m, 0)?));
            terms.push((Complex64::new(1.0, 0.0), PauliString::new(n_qubits, m, m)?));
        }
    }
    PauliSum::from_terms(n_qubits, terms)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum InitialKind {
    HfBitstring(u64),
    Uniform,
    Dicke(usize),
}

pub fn initial_state(kind: InitialKind, n_qubits: usize) -> Result<StateVector> {
    match kind {
        InitialKind::HfBitstring(b) => StateVector::basis_state(n_qubits, b),
        InitialKind::Uniform => {
            if n_qubits > 30 {
                return Err(Error::Capacity {
                    what: "full-register statevector",
                    requested: n_qubits,
                    limit: 30,
                });
            }
            let dim = 1usize << n_qubits;
            let a = Complex64::new((dim as f64).sqrt().recip(), 0.0);
            StateVector::full(n_qubits, vec![a; dim])
        }
        InitialKind::Dicke(k) => {
            if k > n_qubits {
                return Err(Error::InvalidArgument(format!(
                    "Dicke state with {k} excitations on {n_qubits} qubits"
                )));
            }
            let sector = SectorBasis::hamming_weight(n_qubits, k)?;
            let a = Complex64::new((sector.dim() as f64).sqrt().recip(), 0.0);
            let amps = vec![a; sector.dim()];
            Ok(StateVector::new(n_qubits, amps, Basis::Sector(Arc::new(sector)))?.to_full())
        }
    }
}

/// A complete QAOA problem. Immutable once built.
#[derive(Clone, Debug)]
pub struct ProblemInstance {
    label: String,
    cost: CostOperator,
    mixer: MixerSpec,
    initial_state: StateVector,
    symmetry_sector: Option<SymmetrySector>,
    sector_basis: Option<Arc<SectorBasis>>,
    warnings: Vec<String>,
}

impl ProblemInstance {
    pub fn new(
        label: impl Into<String>,
        cost: CostOperator,
        mixer: MixerSpec,
        initial_state: StateVector,
        symmetry_sector: Option<SymmetrySector>,
    ) -> Result<Self> {
        let n = cost.n_qubits();
        if initial_state.n_qubits() != n {
            return Err(Error::Shape(format!(
                "{n}-qubit cost with a {}-qubit initial state",
                initial_state.n_qubits()
            )));
        }
        if !initial_state.basis().is_full() {
            return Err(Error::Mode(
                "initial state must be given in the full register".into(),
            ));
        }
        if (initial_state.norm() - 1.0).abs() > UNIT_NORM_TOL {
            return Err(Error::InvalidArgument(format!(
                "initial state norm {} is not 1",
                initial_state.norm()
            )));
        }
        match &cost {
            CostOperator::Pauli(h) => h.ensure_hermitian()?,
            CostOperator::Diagonal(d) if !d.basis().is_full() => {
                return Err(Error::Mode(
                    "cost diagonal must cover the full register".into(),
                ))
            }
            CostOperator::Diagonal(_) => {}
        }
        match &mixer {
            MixerSpec::Diagonal(d) => {
                if d.n_qubits() != n || !d.basis().is_full() {
                    return Err(Error::Shape(format!(
                        "mixer diagonal of length {} for {n} qubits",
                        d.values().len()
                    )));
                }
            }
            MixerSpec::Xy(h) => {
                if h.n_qubits() != n {
                    return Err(Error::Shape("XY mixer register size differs".into()));
                }
                h.ensure_hermitian()?;
            }
            MixerSpec::TransverseX => {
                if symmetry_sector.is_some() {
                    return Err(Error::Mode(
                        "the X mixer does not conserve a symmetry sector".into(),
                    ));
                }
            }
        }

        let sector_basis = match &symmetry_sector {
            None => None,
            Some(sector) => {
                let leak = initial_state.leakage(|b| sector.contains(b, n));
                if leak > LEAK_TOL {
                    return Err(Error::InvalidArgument(format!(
                        "initial state has weight {leak:.3e} outside the declared sector"
                    )));
                }
                let basis = Arc::new(SectorBasis::from_sector(n, sector)?);
                if let CostOperator::Pauli(h) = &cost {
                    check_preserves(h, sector, &basis, "cost")?;
                }
                if let MixerSpec::Xy(h) = &mixer {
                    check_preserves(h, sector, &basis, "mixer")?;
                }
                Some(basis)
            }
        };

        Ok(Self {
            label: label.into(),
            cost,
            mixer,
            initial_state,
            symmetry_sector,
            sector_basis,
            warnings: Vec::new(),
        })
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn n_qubits(&self) -> usize {
        self.cost.n_qubits()
    }

    pub fn cost(&self) -> &CostOperator {
        &self.cost
    }

    pub fn mixer(&self) -> &MixerSpec {
        &self.mixer
    }

    pub fn initial_state(&self) -> &StateVector {
        &self.initial_state
    }

    pub fn symmetry_sector(&self) -> Option<&SymmetrySector> {
        self.symmetry_sector.as_ref()
    }

    pub fn sector_basis(&self) -> Option<&Arc<SectorBasis>> {
        self.sector_basis.as_ref()
    }

    /// Non-fatal validation findings.
    pub fn warnings(&self) -> &[String] {
        &self.warnings
    }

    pub(crate) fn push_warning(&mut self, w: String) {
        self.warnings.push(w);
    }

    /// Replace the mixer and initial state, dropping or keeping the sector.
    pub fn with_mixer(
        &self,
        mixer: MixerSpec,
        initial_state: StateVector,
        symmetry_sector: Option<SymmetrySector>,
    ) -> Result<Self> {
        Self::new(
            self.label.clone(),
            self.cost.clone(),
            mixer,
            initial_state,
            symmetry_sector,
        )
    }

    pub fn default_degeneracy_tol(&self) -> DegeneracyTol {
        match self.cost {
            CostOperator::Pauli(_) => DegeneracyTol::CHEMISTRY,
            CostOperator::Diagonal(_) => DegeneracyTol::DIAGONAL,
        }
    }

    /// Lowest eigenspace of the cost, restricted to the symmetry sector when one is set.
    pub fn ground_manifold(&self) -> Result<GroundManifold> {
        self.ground_manifold_with(self.default_degeneracy_tol())
    }

    pub fn ground_manifold_with(&self, tol: DegeneracyTol) -> Result<GroundManifold> {
        match (&self.cost, &self.sector_basis) {
            (CostOperator::Pauli(h), sector) => ground_states_pauli(h, tol, sector.as_ref()),
            (CostOperator::Diagonal(d), None) => Ok(ground_states_diagonal(d, tol)),
            (CostOperator::Diagonal(d), Some(sector)) => {
                let restricted = d.restrict(sector)?;
                let e0 = restricted.min();
                Ok(GroundManifold {
                    energy: e0,
                    degeneracy_tol: tol,
                    states: ManifoldStates::Indicators {
                        n_qubits: d.n_qubits(),
                        states: restricted.argmin_states(tol.threshold(e0)),
                    },
                })
            }
        }
    }
}

/// Reject a Pauli sum that maps sector states outside the sector.
fn check_preserves(
    h: &PauliSum,
    sector: &SymmetrySector,
    basis: &SectorBasis,
    what: &str,
) -> Result<()> {
    let n = h.n_qubits();
    let violation = if n <= DENSE_VALIDATION_LIMIT {
        // [H, Q] = 0 for the diagonal charge Q iff H only couples states of equal charge;
        // scan every column of the dense matrix.
        let dense = h.to_dense()?;
        let mut worst = 0.0f64;
        for j in 0..dense.ncols() {
            let in_j = sector.contains(j as u64, n);
            for i in 0..dense.nrows() {
                if sector.contains(i as u64, n) != in_j {
                    worst = worst.max(dense[(i, j)].norm());
                }
            }
        }
        worst
    } else {
        let mut worst = 0.0f64;
        for g in h.x_groups() {
            if g.x_mask == 0 {
                continue;
            }
            for &b in basis.states() {
                if basis.position(b ^ g.x_mask).is_none() {
                    worst = worst.max(g.amplitude(b).norm());
                }
            }
        }
        worst
    };
    if violation > 1e-10 {
        return Err(Error::InvalidArgument(format!(
            "{what} does not preserve the declared sector (coupling {violation:.3e})"
        )));
    }
    Ok(())
}
