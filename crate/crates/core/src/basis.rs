//! Computational-basis bookkeeping: the full register or a fixed-symmetry sector.

use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Placement of spin-orbitals on qubits.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SpinOrdering {
    /// Spin-up of spatial orbital `i` on qubit `2i`, spin-down on `2i + 1`.
    #[default]
    Interleaved,
    /// All spin-up orbitals first, then all spin-down.
    Blocked,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Spin {
    Up,
    Down,
}

impl SpinOrdering {
    pub fn qubit(self, spatial: usize, spin: Spin, n_spatial: usize) -> usize {
        match (self, spin) {
            (SpinOrdering::Interleaved, Spin::Up) => 2 * spatial,
            (SpinOrdering::Interleaved, Spin::Down) => 2 * spatial + 1,
            (SpinOrdering::Blocked, Spin::Up) => spatial,
            (SpinOrdering::Blocked, Spin::Down) => spatial + n_spatial,
        }
    }

    /// Spin of the orbital sitting on `qubit` in an `n_qubits` register.
    pub fn spin_of(self, qubit: usize, n_qubits: usize) -> Spin {
        let up = match self {
            SpinOrdering::Interleaved => qubit.is_multiple_of(2),
            SpinOrdering::Blocked => qubit < n_qubits / 2,
        };
        if up {
            Spin::Up
        } else {
            Spin::Down
        }
    }

    /// Mask of all spin-up qubits.
    pub fn up_mask(self, n_qubits: usize) -> u64 {
        (0..n_qubits)
            .filter(|&q| self.spin_of(q, n_qubits) == Spin::Up)
            .fold(0u64, |m, q| m | (1 << q))
    }
}

/// Conserved quantum numbers of a fermionic register.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SymmetrySector {
    pub n_particles: usize,
    /// Twice the spin projection; `None` when only particle number is fixed.
    pub twice_sz: Option<i64>,
    pub ordering: SpinOrdering,
}

impl SymmetrySector {
    pub fn particles(n_particles: usize) -> Self {
        Self {
            n_particles,
            twice_sz: None,
            ordering: SpinOrdering::Interleaved,
        }
    }

    pub fn contains(&self, b: u64, n_qubits: usize) -> bool {
        if b.count_ones() as usize != self.n_particles {
            return false;
        }
        match self.twice_sz {
            None => true,
            Some(s) => {
                let up = (b & self.ordering.up_mask(n_qubits)).count_ones() as i64;
                let down = self.n_particles as i64 - up;
                up - down == s
            }
        }
    }
}

/// Sorted list of basis states spanning a sector.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SectorBasis {
    n_qubits: usize,
    states: Vec<u64>,
}

impl SectorBasis {
    pub fn new(n_qubits: usize, mut states: Vec<u64>) -> Result<Self> {
        states.sort_unstable();
        states.dedup();
        if n_qubits < 64 && states.iter().any(|&b| b >> n_qubits != 0) {
            return Err(Error::Bounds(format!(
                "sector state outside a {n_qubits}-qubit register"
            )));
        }
        Ok(Self { n_qubits, states })
    }

    pub fn from_sector(n_qubits: usize, sector: &SymmetrySector) -> Result<Self> {
        if n_qubits > 40 {
            return Err(Error::Capacity {
                what: "sector enumeration",
                requested: n_qubits,
                limit: 40,
            });
        }
        let states = (0..1u64 << n_qubits)
            .filter(|&b| sector.contains(b, n_qubits))
            .collect();
        Self::new(n_qubits, states)
    }

    pub fn hamming_weight(n_qubits: usize, weight: usize) -> Result<Self> {
        Self::from_sector(n_qubits, &SymmetrySector::particles(weight))
    }

    pub fn n_qubits(&self) -> usize {
        self.n_qubits
    }

    pub fn states(&self) -> &[u64] {
        &self.states
    }

    pub fn dim(&self) -> usize {
        self.states.len()
    }

    pub fn position(&self, b: u64) -> Option<usize> {
        self.states.binary_search(&b).ok()
    }

    /// FNV-1a digest of the state list, for snapshot sidecars.
    pub fn digest(&self) -> String {
        let mut h: u64 = 0xcbf2_9ce4_8422_2325;
        for b in &self.states {
            for byte in b.to_le_bytes() {
                h ^= byte as u64;
                h = h.wrapping_mul(0x0100_0000_01b3);
            }
        }
        format!("{h:016x}")
    }
}

/// Which basis states an amplitude array is indexed by.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Basis {
    Full,
    Sector(Arc<SectorBasis>),
}

impl Basis {
    pub fn dim(&self, n_qubits: usize) -> usize {
        match self {
            Basis::Full => 1usize << n_qubits,
            Basis::Sector(s) => s.dim(),
        }
    }

    /// Computational-basis label of position `i`.
    #[inline]
    pub fn state(&self, i: usize) -> u64 {
        match self {
            Basis::Full => i as u64,
            Basis::Sector(s) => s.states[i],
        }
    }

    /// Position of computational state `b`, if it is part of this basis.
    #[inline]
    pub fn position(&self, b: u64, n_qubits: usize) -> Option<usize> {
        match self {
            Basis::Full => ((b as usize) < (1usize << n_qubits)).then_some(b as usize),
            Basis::Sector(s) => s.position(b),
        }
    }

    pub fn is_full(&self) -> bool {
        matches!(self, Basis::Full)
    }

    pub fn mode_name(&self) -> &'static str {
        match self {
            Basis::Full => "full",
            Basis::Sector(_) => "sector",
        }
    }
}
