use serde::{Deserialize, Serialize};

use super::{initial_state, CostOperator, InitialKind, MixerSpec, ProblemInstance};
use crate::basis::{Spin, SpinOrdering, SymmetrySector};
use crate::error::{Error, Result};
use crate::hamcore::{diagonal_part, jordan_wigner, DiagonalOperator, MolecularIntegrals};

/// Which diagonal serves as the Hartree-Fock mixer.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ChemistryMixer {
    /// `<x|H_e|x>` for every determinant `x`.
    #[default]
    DiagOfHe,
    /// Sum of one-body diagonals `h_pp` over occupied spin-orbitals.
    FockOrbital,
}

/// Determinant filling the lowest `n_alpha` up and `n_beta` down spin-orbitals.
pub fn hf_bitstring(ints: &MolecularIntegrals, ordering: SpinOrdering) -> u64 {
    let n = ints.n_spatial();
    let mut b = 0u64;
    for i in 0..ints.n_alpha() {
        b |= 1 << ordering.qubit(i, Spin::Up, n);
    }
    for i in 0..ints.n_beta() {
        b |= 1 << ordering.qubit(i, Spin::Down, n);
    }
    b
}

pub fn build_chemistry_problem(
    ints: &MolecularIntegrals,
    mixer_mode: ChemistryMixer,
    ordering: SpinOrdering,
) -> Result<ProblemInstance> {
    let n_qubits = 2 * ints.n_spatial();
    if n_qubits > 30 {
        return Err(Error::Capacity {
            what: "full-register chemistry instance",
            requested: n_qubits,
            limit: 30,
        });
    }
    let cost = jordan_wigner(ints, ordering)?;
    let mixer = match mixer_mode {
        ChemistryMixer::DiagOfHe => diagonal_part(&cost)?,
        ChemistryMixer::FockOrbital => {
            let n = ints.n_spatial();
            let eps: Vec<f64> = (0..n_qubits)
                .map(|q| {
                    let spatial = (0..n)
                        .find(|&i| {
                            ordering.qubit(i, Spin::Up, n) == q
                                || ordering.qubit(i, Spin::Down, n) == q
                        })
                        .expect("every qubit maps to an orbital");
                    ints.one_body(spatial, spatial)
                })
                .collect();
            DiagonalOperator::from_fn(n_qubits, |b| {
                (0..n_qubits)
                    .filter(|&q| b >> q & 1 == 1)
                    .map(|q| eps[q])
                    .sum()
            })?
        }
    };
    let hf = hf_bitstring(ints, ordering);
    let sector = SymmetrySector {
        n_particles: ints.n_electrons(),
        twice_sz: Some(ints.ms2()),
        ordering,
    };

    // the HF determinant should minimise the mixer within its own sector
    let e_hf = mixer.values()[hf as usize];
    let rivals: Vec<u64> = (0..1u64 << n_qubits)
        .filter(|&b| b != hf && sector.contains(b, n_qubits))
        .filter(|&b| mixer.values()[b as usize] <= e_hf + 1e-10)
        .collect();

    let label = format!(
        "chem(norb={},nelec={},ms2={},{})",
        ints.n_spatial(),
        ints.n_electrons(),
        ints.ms2(),
        match mixer_mode {
            ChemistryMixer::DiagOfHe => "diag_of_he",
            ChemistryMixer::FockOrbital => "fock_orbital",
        }
    );
    let mut instance = ProblemInstance::new(
        label,
        CostOperator::Pauli(cost),
        MixerSpec::Diagonal(mixer),
        initial_state(InitialKind::HfBitstring(hf), n_qubits)?,
        Some(sector),
    )?;
    if !rivals.is_empty() {
        instance.push_warning(format!(
            "HF determinant {hf:#b} is not the unique mixer minimum in its sector ({} rival(s), first {:#b})",
            rivals.len(),
            rivals[0]
        ));
    }
    Ok(instance)
}
