use serde::{Deserialize, Serialize};

use super::grid::GridSpec;

/// Margin by which a cell must fall under a threshold to count as a drop.
pub const DROP_TOL: f64 = 1e-10;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Provenance {
    pub instance_label: String,
    pub schedule: String,
    pub tangent_c: f64,
    pub delta_spacing: String,
    pub tool_version: String,
    pub threads: usize,
    pub elapsed_seconds: f64,
    pub ground_energy: f64,
    pub ground_degeneracy: usize,
    pub continuous_time_convention: String,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CellFailure {
    pub delta_index: usize,
    pub p_index: usize,
    pub message: String,
}

/// Final squared overlaps over a `(Δ, p)` grid; `overlaps[i][j]` is `(Δ_i, p_j)`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct PhaseDiagram {
    pub grid: GridSpec,
    pub overlaps: Vec<Vec<Option<f64>>>,
    pub initial_overlap: f64,
    pub provenance: Provenance,
    pub failures: Vec<CellFailure>,
}

impl PhaseDiagram {
    pub fn get(&self, delta_index: usize, p_index: usize) -> Option<f64> {
        self.overlaps
            .get(delta_index)?
            .get(p_index)
            .copied()
            .flatten()
    }

    /// Column for the grid index of `p`.
    pub fn column(&self, p_index: usize) -> Vec<Option<f64>> {
        self.overlaps.iter().map(|row| row[p_index]).collect()
    }

    pub fn p_index(&self, p: usize) -> Option<usize> {
        self.grid.p_values().iter().position(|&q| q == p)
    }

    pub fn delta_index(&self, delta: f64) -> Option<usize> {
        self.grid.delta_values().iter().position(|&d| d == delta)
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub enum DeltaCritRule {
    FirstDropBelowInitial,
    FirstDropBelow(f64),
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum DeltaCrit {
    /// No cell in the column falls below the threshold.
    Absent,
    /// The smallest grid Δ is already below, so no Δ is still above.
    BelowAtFirst,
    At(f64),
}

impl DeltaCrit {
    pub fn value(self) -> Option<f64> {
        match self {
            DeltaCrit::At(d) => Some(d),
            _ => None,
        }
    }
}

/// Last grid Δ before the first drop below the rule's threshold, per p column.
/// Missing cells are skipped.
pub fn delta_crit(pd: &PhaseDiagram, rule: DeltaCritRule) -> Vec<DeltaCrit> {
    let threshold = match rule {
        DeltaCritRule::FirstDropBelowInitial => pd.initial_overlap,
        DeltaCritRule::FirstDropBelow(t) => t,
    };
    let deltas = pd.grid.delta_values();
    (0..pd.grid.p_values().len())
        .map(|j| {
            let first_drop = (0..deltas.len())
                .find(|&i| matches!(pd.get(i, j), Some(v) if v < threshold - DROP_TOL));
            match first_drop {
                None => DeltaCrit::Absent,
                Some(0) => DeltaCrit::BelowAtFirst,
                Some(i) => DeltaCrit::At(deltas[i - 1]),
            }
        })
        .collect()
}
