use std::fs;
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};

use super::{CostOperator, MixerSpec, ProblemInstance};
use crate::basis::SymmetrySector;
use crate::error::{Error, Result};
use crate::hamcore::{DiagonalOperator, PauliSum, PauliSumJson};
use crate::simkernel::StateVector;

/// Top-level manifest; payloads live in sibling files named here.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Manifest {
    pub label: String,
    pub n_qubits: usize,
    pub cost_kind: String,
    pub cost_file: String,
    pub mixer_kind: String,
    pub mixer_file: Option<String>,
    pub initial_state_file: String,
    pub symmetry_sector: Option<SymmetrySector>,
    pub warnings: Vec<String>,
}

#[derive(Serialize, Deserialize)]
struct DiagonalJson {
    n_qubits: usize,
    values: Vec<f64>,
}

fn write(path: &Path, text: &str) -> Result<()> {
    fs::write(path, text).map_err(|e| Error::io(path, e))
}

fn read(path: &Path) -> Result<String> {
    fs::read_to_string(path).map_err(|e| Error::io(path, e))
}

fn pauli_payload(h: &PauliSum) -> Result<String> {
    h.to_json_string()
}

fn diagonal_payload(d: &DiagonalOperator) -> Result<String> {
    Ok(serde_json::to_string(&DiagonalJson {
        n_qubits: d.n_qubits(),
        values: d.values().to_vec(),
    })?)
}

fn read_diagonal(path: &Path) -> Result<DiagonalOperator> {
    let doc: DiagonalJson = serde_json::from_str(&read(path)?)?;
    DiagonalOperator::new(doc.n_qubits, doc.values)
}

fn read_pauli(path: &Path) -> Result<PauliSum> {
    let doc: PauliSumJson = serde_json::from_str(&read(path)?)?;
    PauliSum::from_json(&doc)
}

/// Write `manifest.json` plus payload files into `dir`; returns the manifest path.
pub fn write_manifest(instance: &ProblemInstance, dir: &Path) -> Result<PathBuf> {
    fs::create_dir_all(dir).map_err(|e| Error::io(dir, e))?;
    let cost_file = "cost.json".to_string();
    let cost_text = match instance.cost() {
        CostOperator::Pauli(h) => pauli_payload(h)?,
        CostOperator::Diagonal(d) => diagonal_payload(d)?,
    };
    write(&dir.join(&cost_file), &cost_text)?;

    let mixer_text = match instance.mixer() {
        MixerSpec::Diagonal(d) => Some(diagonal_payload(d)?),
        MixerSpec::Xy(h) => Some(pauli_payload(h)?),
        MixerSpec::TransverseX => None,
    };
    let mixer_file = match mixer_text {
        Some(text) => {
            write(&dir.join("mixer.json"), &text)?;
            Some("mixer.json".to_string())
        }
        None => None,
    };

    let initial_state_file = "initial.bin".to_string();
    instance
        .initial_state()
        .write_snapshot(&dir.join(&initial_state_file))?;

    let manifest = Manifest {
        label: instance.label().to_string(),
        n_qubits: instance.n_qubits(),
        cost_kind: instance.cost().kind_name().to_string(),
        cost_file,
        mixer_kind: instance.mixer().kind_name().to_string(),
        mixer_file,
        initial_state_file,
        symmetry_sector: instance.symmetry_sector().copied(),
        warnings: instance.warnings().to_vec(),
    };
    let path = dir.join("manifest.json");
    write(&path, &serde_json::to_string_pretty(&manifest)?)?;
    Ok(path)
}

pub fn read_manifest(path: &Path) -> Result<ProblemInstance> {
    let m: Manifest = serde_json::from_str(&read(path)?)?;
    let dir = path.parent().unwrap_or(Path::new("."));
    let bad = |msg: String| Error::Format {
        format: "manifest",
        message: msg,
    };
    let cost = match m.cost_kind.as_str() {
        "pauli" => CostOperator::Pauli(read_pauli(&dir.join(&m.cost_file))?),
        "diagonal" => CostOperator::Diagonal(read_diagonal(&dir.join(&m.cost_file))?),
        other => return Err(bad(format!("unknown cost kind `{other}`"))),
    };
    let payload = || -> Result<PathBuf> {
        m.mixer_file.as_ref().map(|f| dir.join(f)).ok_or_else(|| {
            bad(format!(
                "mixer kind `{}` needs a payload file",
                m.mixer_kind
            ))
        })
    };
    let mixer = match m.mixer_kind.as_str() {
        "diagonal" => MixerSpec::Diagonal(read_diagonal(&payload()?)?),
        "xy" => MixerSpec::Xy(read_pauli(&payload()?)?),
        "transverse_x" => MixerSpec::TransverseX,
        other => return Err(bad(format!("unknown mixer kind `{other}`"))),
    };
    let initial = StateVector::read_snapshot(&dir.join(&m.initial_state_file))?;
    let mut instance = ProblemInstance::new(m.label, cost, mixer, initial, m.symmetry_sector)?;
    for w in m.warnings {
        instance.push_warning(w);
    }
    if instance.n_qubits() != m.n_qubits {
        return Err(bad(format!(
            "manifest declares {} qubits, payloads have {}",
            m.n_qubits,
            instance.n_qubits()
        )));
    }
    Ok(instance)
}
