use std::fs;
use std::path::{Path, PathBuf};
use std::sync::Arc;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::basis::{Basis, SectorBasis};
use crate::error::{Error, Result};

/// Amplitudes over the full register or over a sector basis.
#[derive(Clone, Debug, PartialEq)]
pub struct StateVector {
    n_qubits: usize,
    amplitudes: Vec<Complex64>,
    basis: Basis,
}

impl StateVector {
    pub fn new(n_qubits: usize, amplitudes: Vec<Complex64>, basis: Basis) -> Result<Self> {
        let dim = basis.dim(n_qubits);
        if amplitudes.len() != dim {
            return Err(Error::Shape(format!(
                "{} amplitudes for a basis of dimension {dim}",
                amplitudes.len()
            )));
        }
        Ok(Self {
            n_qubits,
            amplitudes,
            basis,
        })
    }

    pub fn full(n_qubits: usize, amplitudes: Vec<Complex64>) -> Result<Self> {
        Self::new(n_qubits, amplitudes, Basis::Full)
    }

    pub fn zeros(n_qubits: usize, basis: Basis) -> Self {
        let dim = basis.dim(n_qubits);
        Self {
            n_qubits,
            amplitudes: vec![Complex64::new(0.0, 0.0); dim],
            basis,
        }
    }

    /// Indicator state `|b>` in the full register.
    pub fn basis_state(n_qubits: usize, b: u64) -> Result<Self> {
        let mut v = Self::zeros(n_qubits, Basis::Full);
        let slot = v
            .amplitudes
            .get_mut(b as usize)
            .ok_or_else(|| Error::Bounds(format!("basis state {b} outside {n_qubits} qubits")))?;
        *slot = Complex64::new(1.0, 0.0);
        Ok(v)
    }

    pub fn n_qubits(&self) -> usize {
        self.n_qubits
    }

    pub fn dim(&self) -> usize {
        self.amplitudes.len()
    }

    pub fn amplitudes(&self) -> &[Complex64] {
        &self.amplitudes
    }

    pub fn amplitudes_mut(&mut self) -> &mut [Complex64] {
        &mut self.amplitudes
    }

    pub fn into_amplitudes(self) -> Vec<Complex64> {
        self.amplitudes
    }

    pub fn basis(&self) -> &Basis {
        &self.basis
    }

    /// Amplitude on computational state `b` (zero outside a sector basis).
    pub fn amplitude_of(&self, b: u64) -> Complex64 {
        self.basis
            .position(b, self.n_qubits)
            .map(|i| self.amplitudes[i])
            .unwrap_or_default()
    }

    pub fn norm_sqr(&self) -> f64 {
        self.amplitudes.iter().map(|a| a.norm_sqr()).sum()
    }

    pub fn norm(&self) -> f64 {
        self.norm_sqr().sqrt()
    }

    pub fn normalized(mut self) -> Result<Self> {
        let n = self.norm();
        if n == 0.0 {
            return Err(Error::InvalidArgument(
                "cannot normalize the zero vector".into(),
            ));
        }
        self.amplitudes.iter_mut().for_each(|a| *a /= n);
        Ok(self)
    }

    pub fn scaled(mut self, factor: Complex64) -> Self {
        self.amplitudes.iter_mut().for_each(|a| *a *= factor);
        self
    }

    pub(crate) fn check_compatible(&self, other: &StateVector) -> Result<()> {
        if self.n_qubits != other.n_qubits || self.basis != other.basis {
            return Err(Error::Shape(format!(
                "{}-qubit {} state vs {}-qubit {} state",
                self.n_qubits,
                self.basis.mode_name(),
                other.n_qubits,
                other.basis.mode_name()
            )));
        }
        Ok(())
    }

    /// `<self|other>`.
    pub fn inner(&self, other: &StateVector) -> Result<Complex64> {
        self.check_compatible(other)?;
        Ok(self
            .amplitudes
            .iter()
            .zip(&other.amplitudes)
            .map(|(a, b)| a.conj() * b)
            .sum())
    }

    /// `self + factor · other`.
    pub fn add_scaled(&self, factor: Complex64, other: &StateVector) -> Result<StateVector> {
        self.check_compatible(other)?;
        let amplitudes = self
            .amplitudes
            .iter()
            .zip(&other.amplitudes)
            .map(|(a, b)| a + factor * b)
            .collect();
        Ok(StateVector {
            n_qubits: self.n_qubits,
            amplitudes,
            basis: self.basis.clone(),
        })
    }

    pub fn distance(&self, other: &StateVector) -> Result<f64> {
        Ok(self.add_scaled(Complex64::new(-1.0, 0.0), other)?.norm())
    }

    /// Embed into the full register.
    pub fn to_full(&self) -> StateVector {
        match &self.basis {
            Basis::Full => self.clone(),
            Basis::Sector(s) => {
                let mut out = StateVector::zeros(self.n_qubits, Basis::Full);
                for (&b, a) in s.states().iter().zip(&self.amplitudes) {
                    out.amplitudes[b as usize] = *a;
                }
                out
            }
        }
    }

    /// Project a full-register state onto a sector; also returns the norm left outside.
    pub fn restrict(&self, sector: &Arc<SectorBasis>) -> Result<(StateVector, f64)> {
        if !self.basis.is_full() {
            return Err(Error::Mode("state is already sector-restricted".into()));
        }
        if sector.n_qubits() != self.n_qubits {
            return Err(Error::Shape("sector register size differs".into()));
        }
        let amplitudes: Vec<Complex64> = sector
            .states()
            .iter()
            .map(|&b| self.amplitudes[b as usize])
            .collect();
        let inside: f64 = amplitudes.iter().map(|a| a.norm_sqr()).sum();
        let leak = (self.norm_sqr() - inside).max(0.0).sqrt();
        Ok((
            StateVector {
                n_qubits: self.n_qubits,
                amplitudes,
                basis: Basis::Sector(sector.clone()),
            },
            leak,
        ))
    }

    /// Norm of the amplitude on full-register states rejected by `keep`.
    pub fn leakage(&self, keep: impl Fn(u64) -> bool) -> f64 {
        self.amplitudes
            .iter()
            .enumerate()
            .filter(|(i, _)| !keep(self.basis.state(*i)))
            .map(|(_, a)| a.norm_sqr())
            .sum::<f64>()
            .sqrt()
    }

    /// Binary snapshot: little-endian `(re, im)` f64 pairs, with a JSON sidecar
    /// at `path.json` carrying the register size, mode, and sector digest.
    pub fn write_snapshot(&self, path: &Path) -> Result<()> {
        let mut bytes = Vec::with_capacity(16 * self.amplitudes.len());
        for a in &self.amplitudes {
            bytes.extend_from_slice(&a.re.to_le_bytes());
            bytes.extend_from_slice(&a.im.to_le_bytes());
        }
        fs::write(path, bytes).map_err(|e| Error::io(path, e))?;
        let meta = SnapshotMeta {
            n_qubits: self.n_qubits,
            mode: self.basis.mode_name().to_string(),
            dim: self.amplitudes.len(),
            sector_digest: match &self.basis {
                Basis::Full => None,
                Basis::Sector(s) => Some(s.digest()),
            },
            sector_states: match &self.basis {
                Basis::Full => None,
                Basis::Sector(s) => Some(s.states().to_vec()),
            },
        };
        let side = sidecar_path(path);
        fs::write(&side, serde_json::to_string_pretty(&meta)?).map_err(|e| Error::io(&side, e))
    }

    pub fn read_snapshot(path: &Path) -> Result<Self> {
        let side = sidecar_path(path);
        let meta: SnapshotMeta =
            serde_json::from_str(&fs::read_to_string(&side).map_err(|e| Error::io(&side, e))?)?;
        let bytes = fs::read(path).map_err(|e| Error::io(path, e))?;
        if bytes.len() != 16 * meta.dim {
            return Err(Error::Format {
                format: "snapshot",
                message: format!("{} bytes for {} amplitudes", bytes.len(), meta.dim),
            });
        }
        let amplitudes = bytes
            .chunks_exact(16)
            .map(|c| {
                let re = f64::from_le_bytes(c[..8].try_into().expect("8 bytes"));
                let im = f64::from_le_bytes(c[8..].try_into().expect("8 bytes"));
                Complex64::new(re, im)
            })
            .collect();
        let basis = match (meta.mode.as_str(), meta.sector_states) {
            ("full", _) => Basis::Full,
            ("sector", Some(states)) => {
                let s = SectorBasis::new(meta.n_qubits, states)?;
                if Some(s.digest()) != meta.sector_digest {
                    return Err(Error::Format {
                        format: "snapshot",
                        message: "sector digest mismatch".into(),
                    });
                }
                Basis::Sector(Arc::new(s))
            }
            (mode, _) => {
                return Err(Error::Format {
                    format: "snapshot",
                    message: format!("unknown or incomplete mode {mode:?}"),
                })
            }
        };
        Self::new(meta.n_qubits, amplitudes, basis)
    }
}

fn sidecar_path(path: &Path) -> PathBuf {
    let mut s = path.as_os_str().to_owned();
    s.push(".json");
    PathBuf::from(s)
}

#[derive(Serialize, Deserialize)]
struct SnapshotMeta {
    n_qubits: usize,
    mode: String,
    dim: usize,
    sector_digest: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    sector_states: Option<Vec<u64>>,
}
