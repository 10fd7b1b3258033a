use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::hamcore::DiagonalOperator;

/// `H = Σ h_i s_i + Σ_{i<j} J_ij s_i s_j` with `s_i = 1 - 2·bit_i`.
#[derive(Clone, Debug, PartialEq)]
pub struct IsingInstance {
    n_spins: usize,
    h: Vec<f64>,
    couplings: Vec<(usize, usize, f64)>,
}

/// On-disk form: `{"n": n, "h": [...], "J": [[i, j, value], ...]}`.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct IsingJson {
    pub n: usize,
    pub h: Vec<f64>,
    #[serde(rename = "J")]
    pub j: Vec<(usize, usize, f64)>,
}

impl IsingInstance {
    /// Couplings are stored with `i < j`; repeated pairs are summed.
    pub fn new(n_spins: usize, h: Vec<f64>, couplings: Vec<(usize, usize, f64)>) -> Result<Self> {
        if h.len() != n_spins {
            return Err(Error::Shape(format!(
                "{} fields for {n_spins} spins",
                h.len()
            )));
        }
        let mut merged = std::collections::BTreeMap::new();
        for (i, j, v) in couplings {
            if i == j || i >= n_spins || j >= n_spins {
                return Err(Error::Bounds(format!(
                    "coupling ({i}, {j}) on {n_spins} spins"
                )));
            }
            *merged.entry((i.min(j), i.max(j))).or_insert(0.0) += v;
        }
        Ok(Self {
            n_spins,
            h,
            couplings: merged.into_iter().map(|((i, j), v)| (i, j, v)).collect(),
        })
    }

    pub fn n_spins(&self) -> usize {
        self.n_spins
    }

    pub fn fields(&self) -> &[f64] {
        &self.h
    }

    pub fn couplings(&self) -> &[(usize, usize, f64)] {
        &self.couplings
    }

    pub fn energy(&self, x: u64) -> f64 {
        let s = |i: usize| if x >> i & 1 == 0 { 1.0 } else { -1.0 };
        let field: f64 = self.h.iter().enumerate().map(|(i, h)| h * s(i)).sum();
        let pair: f64 = self
            .couplings
            .iter()
            .map(|&(i, j, v)| v * s(i) * s(j))
            .sum();
        field + pair
    }

    pub fn to_json(&self) -> IsingJson {
        IsingJson {
            n: self.n_spins,
            h: self.h.clone(),
            j: self.couplings.clone(),
        }
    }

    pub fn from_json(doc: IsingJson) -> Result<Self> {
        Self::new(doc.n, doc.h, doc.j)
    }

    pub fn from_json_str(text: &str) -> Result<Self> {
        Self::from_json(serde_json::from_str(text)?)
    }

    pub fn to_json_string(&self) -> Result<String> {
        Ok(serde_json::to_string_pretty(&self.to_json())?)
    }
}

/// Fully connected instance with fields and couplings uniform on `[-1, 1]`.
pub fn random_ising(n_spins: usize, seed: u64) -> Result<IsingInstance> {
    if n_spins < 2 {
        return Err(Error::InvalidArgument(format!(
            "random Ising needs at least 2 spins, got {n_spins}"
        )));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let h = (0..n_spins).map(|_| rng.random_range(-1.0..=1.0)).collect();
    let mut couplings = Vec::with_capacity(n_spins * (n_spins - 1) / 2);
    for i in 0..n_spins {
        for j in i + 1..n_spins {
            couplings.push((i, j, rng.random_range(-1.0..=1.0)));
        }
    }
    IsingInstance::new(n_spins, h, couplings)
}

pub fn ising_cost(instance: &IsingInstance) -> Result<DiagonalOperator> {
    DiagonalOperator::from_fn(instance.n_spins, |x| instance.energy(x))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn two_spin_value() {
        let inst = IsingInstance::new(2, vec![1.0, -1.0], vec![(0, 1, 0.5)]).unwrap();
        assert_eq!(ising_cost(&inst).unwrap().values()[0], 0.5);
    }

    #[test]
    fn random_shapes() {
        let inst = random_ising(2, 3).unwrap();
        assert_eq!(inst.fields().len(), 2);
        assert_eq!(inst.couplings().len(), 1);
        let inst = random_ising(6, 3).unwrap();
        assert_eq!(inst.couplings().len(), 15);
        assert!(inst.fields().iter().all(|h| h.abs() <= 1.0));
        assert_eq!(inst, random_ising(6, 3).unwrap());
    }

    #[test]
    fn json_round_trip() {
        let inst = random_ising(4, 9).unwrap();
        let text = inst.to_json_string().unwrap();
        assert!(text.contains("\"J\""));
        assert_eq!(IsingInstance::from_json_str(&text).unwrap(), inst);
    }
}
