//! Jordan–Wigner encoding of fermionic operators.
//!
//! Occupied spin-orbital = qubit in `|1>`. `a_k = Z_0 ... Z_{k-1} (X_k + iY_k)/2`.

use std::collections::HashMap;

use num_complex::Complex64;

use super::fcidump::MolecularIntegrals;
use super::pauli::{PauliString, PauliSum, DEFAULT_DROP_TOL};
use crate::basis::{Spin, SpinOrdering};
use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Ladder {
    Create,
    Annihilate,
}

/// Jordan–Wigner image of `a†_mode` or `a_mode`.
pub fn jw_ladder(mode: usize, n_qubits: usize, kind: Ladder) -> Result<PauliSum> {
    if mode >= n_qubits {
        return Err(Error::Bounds(format!(
            "mode {mode} out of range for {n_qubits} qubits"
        )));
    }
    let parity = (1u64 << mode) - 1;
    let bit = 1u64 << mode;
    let x = PauliString::new(n_qubits, bit, parity)?;
    let y = PauliString::new(n_qubits, bit, parity | bit)?;
    let y_coeff = match kind {
        Ladder::Create => Complex64::new(0.0, -0.5),
        Ladder::Annihilate => Complex64::new(0.0, 0.5),
    };
    PauliSum::from_terms(n_qubits, [(Complex64::new(0.5, 0.0), x), (y_coeff, y)])
}

/// Accumulates Pauli terms keyed by mask pair.
#[derive(Default)]
struct TermAccumulator {
    acc: HashMap<(u64, u64), Complex64>,
}

impl TermAccumulator {
    fn add_product(&mut self, scale: f64, a: &PauliSum, b: &PauliSum) {
        for (ca, sa) in a.terms() {
            for (cb, sb) in b.terms() {
                let (phase, s) = sa.mul(sb);
                *self.acc.entry((s.x_mask(), s.z_mask())).or_default() += ca * cb * phase * scale;
            }
        }
    }

    fn add_sum(&mut self, scale: f64, a: &PauliSum) {
        for (c, s) in a.terms() {
            *self.acc.entry((s.x_mask(), s.z_mask())).or_default() += c * scale;
        }
    }

    fn finish(self, n_qubits: usize) -> Result<PauliSum> {
        let terms = self
            .acc
            .into_iter()
            .map(|((x, z), c)| Ok((c, PauliString::new(n_qubits, x, z)?)))
            .collect::<Result<Vec<_>>>()?;
        PauliSum::from_terms(n_qubits, terms)
    }
}

/// Qubit Hamiltonian of the second-quantized electronic Hamiltonian
/// `E_core + Σ h_pq a†_p a_q + ½ Σ (pq|rs) a†_p a†_r a_s a_q`
/// over spin-orbitals, with spin-conserving integrals.
pub fn jordan_wigner(ints: &MolecularIntegrals, ordering: SpinOrdering) -> Result<PauliSum> {
    let n_spatial = ints.n_spatial();
    let n_qubits = 2 * n_spatial;
    if n_qubits > 64 {
        return Err(Error::Capacity {
            what: "Jordan-Wigner register",
            requested: n_qubits,
            limit: 64,
        });
    }
    let spins = [Spin::Up, Spin::Down];
    let q = |i: usize, s: Spin| ordering.qubit(i, s, n_spatial);

    let create: Vec<PauliSum> = (0..n_qubits)
        .map(|m| jw_ladder(m, n_qubits, Ladder::Create))
        .collect::<Result<_>>()?;
    let annihilate: Vec<PauliSum> = (0..n_qubits)
        .map(|m| jw_ladder(m, n_qubits, Ladder::Annihilate))
        .collect::<Result<_>>()?;
    // E[P][Q] = a†_P a_Q, only for same-spin pairs
    let mut excitation: HashMap<(usize, usize), PauliSum> = HashMap::new();
    for &s in &spins {
        for i in 0..n_spatial {
            for j in 0..n_spatial {
                let (p, r) = (q(i, s), q(j, s));
                excitation.insert((p, r), create[p].multiply(&annihilate[r])?);
            }
        }
    }

    let mut acc = TermAccumulator::default();
    acc.add_sum(1.0, &PauliSum::identity(n_qubits, ints.core_energy())?);

    // one-body part, plus the -½ Σ_q (pq|qs) E_ps correction from
    // a†_P a†_R a_S a_Q = E_PQ E_RS - δ_QR E_PS
    for &s in &spins {
        for i in 0..n_spatial {
            for j in 0..n_spatial {
                let contraction: f64 = (0..n_spatial).map(|k| ints.two_body(i, k, k, j)).sum();
                let coeff = ints.one_body(i, j) - 0.5 * contraction;
                if coeff != 0.0 {
                    acc.add_sum(coeff, &excitation[&(q(i, s), q(j, s))]);
                }
            }
        }
    }

    for &s1 in &spins {
        for &s2 in &spins {
            for i in 0..n_spatial {
                for j in 0..n_spatial {
                    let left = &excitation[&(q(i, s1), q(j, s1))];
                    for k in 0..n_spatial {
                        for l in 0..n_spatial {
                            let v = ints.two_body(i, j, k, l);
                            if v == 0.0 {
                                continue;
                            }
                            acc.add_product(0.5 * v, left, &excitation[&(q(k, s2), q(l, s2))]);
                        }
                    }
                }
            }
        }
    }

    let h = acc.finish(n_qubits)?.simplify(DEFAULT_DROP_TOL);
    h.ensure_hermitian()?;
    Ok(hermitian_part(&h))
}

/// Drops residual imaginary parts of coefficients.
pub(crate) fn hermitian_part(h: &PauliSum) -> PauliSum {
    PauliSum::from_terms(
        h.n_qubits(),
        h.terms()
            .iter()
            .map(|(c, s)| (Complex64::new(c.re, 0.0), *s)),
    )
    .expect("same register")
    .simplify(DEFAULT_DROP_TOL)
}

/// Total particle number `Σ (I - Z_k)/2`.
pub fn number_operator(n_qubits: usize) -> Result<PauliSum> {
    let mut terms = vec![(
        Complex64::new(n_qubits as f64 / 2.0, 0.0),
        PauliString::identity(n_qubits)?,
    )];
    for k in 0..n_qubits {
        terms.push((
            Complex64::new(-0.5, 0.0),
            PauliString::new(n_qubits, 0, 1 << k)?,
        ));
    }
    PauliSum::from_terms(n_qubits, terms)
}

/// Spin projection `½ Σ_i (n_{i↑} - n_{i↓})`.
pub fn sz_operator(n_qubits: usize, ordering: SpinOrdering) -> Result<PauliSum> {
    let mut terms = Vec::new();
    for k in 0..n_qubits {
        let sign = match ordering.spin_of(k, n_qubits) {
            Spin::Up => 1.0,
            Spin::Down => -1.0,
        };
        // n_k = (I - Z_k)/2, weighted by ±½
        terms.push((
            Complex64::new(0.25 * sign, 0.0),
            PauliString::identity(n_qubits)?,
        ));
        terms.push((
            Complex64::new(-0.25 * sign, 0.0),
            PauliString::new(n_qubits, 0, 1 << k)?,
        ));
    }
    Ok(PauliSum::from_terms(n_qubits, terms)?.simplify(DEFAULT_DROP_TOL))
}
