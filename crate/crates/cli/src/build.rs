use std::fs;
use std::path::Path;

use qaoa_lab::basis::{SpinOrdering, SymmetrySector};
use qaoa_lab::hamcore::{parse_fcidump, MolecularIntegrals};
use qaoa_lab::problems::{
    build_chemistry_problem, hf_bitstring, initial_state, ising_cost, parse_dimacs, random_3sat,
    random_ising, sat_cost, xy_mixer, ChemistryMixer, CostOperator, DimacsMode, InitialKind,
    IsingInstance, MixerSpec, ProblemInstance,
};
use qaoa_lab::qaoa::ScheduleKind;
use qaoa_lab::sweep::{linear_points, log_points, p_range, DeltaSpacing};

use crate::args::{
    HfMixerArg, InitialArg, MixerKind, OrderingArg, ProblemArgs, ProblemKind, ScheduleArg,
};
use crate::CliError;

fn usage(msg: impl Into<String>) -> CliError {
    CliError::Usage(msg.into())
}

fn numbers<T: std::str::FromStr>(flag: &str, text: &str, count: usize) -> Result<Vec<T>, CliError> {
    let parts: Vec<&str> = text.split(',').map(str::trim).collect();
    if parts.len() != count {
        return Err(usage(format!(
            "--{flag} expects {count} comma-separated values, got `{text}`"
        )));
    }
    parts
        .iter()
        .map(|p| {
            p.parse()
                .map_err(|_| usage(format!("--{flag}: bad value `{p}`")))
        })
        .collect()
}

pub fn ordering(o: OrderingArg) -> SpinOrdering {
    match o {
        OrderingArg::Interleaved => SpinOrdering::Interleaved,
        OrderingArg::Blocked => SpinOrdering::Blocked,
    }
}

pub fn schedule(s: ScheduleArg) -> ScheduleKind {
    match s {
        ScheduleArg::Linear => ScheduleKind::Linear,
        ScheduleArg::Root => ScheduleKind::Root,
        ScheduleArg::Tangent => ScheduleKind::Tangent,
    }
}

pub fn read_fcidump(path: &Path) -> Result<MolecularIntegrals, CliError> {
    let text = fs::read_to_string(path).map_err(|e| qaoa_lab::Error::Io {
        path: path.to_path_buf(),
        source: e,
    })?;
    Ok(parse_fcidump(&text)?)
}

fn read_text(path: &Path) -> Result<String, CliError> {
    Ok(fs::read_to_string(path).map_err(|e| qaoa_lab::Error::Io {
        path: path.to_path_buf(),
        source: e,
    })?)
}

/// Parse `lo,hi,count[,log]`.
pub fn delta_grid(text: &str) -> Result<(Vec<f64>, DeltaSpacing), CliError> {
    let parts: Vec<&str> = text.split(',').map(str::trim).collect();
    let log = match parts.len() {
        3 => false,
        4 if parts[3] == "log" => true,
        4 if parts[3] == "linear" => false,
        _ => {
            return Err(usage(format!(
                "--delta-grid expects lo,hi,count[,log], got `{text}`"
            )))
        }
    };
    let lo: f64 = parts[0]
        .parse()
        .map_err(|_| usage(format!("--delta-grid: bad value `{}`", parts[0])))?;
    let hi: f64 = parts[1]
        .parse()
        .map_err(|_| usage(format!("--delta-grid: bad value `{}`", parts[1])))?;
    let count: usize = parts[2]
        .parse()
        .map_err(|_| usage(format!("--delta-grid: bad count `{}`", parts[2])))?;
    if count == 0 || !(lo > 0.0) || !(hi >= lo) || (count > 1 && hi == lo) {
        return Err(usage(format!(
            "--delta-grid needs 0 < lo < hi and count ≥ 1, got `{text}`"
        )));
    }
    Ok(if log {
        (log_points(lo, hi, count), DeltaSpacing::Log)
    } else {
        (linear_points(lo, hi, count), DeltaSpacing::Linear)
    })
}

/// Parse `lo,hi[,stride]`.
pub fn p_grid(text: &str) -> Result<Vec<usize>, CliError> {
    let parts: Vec<usize> = match text.split(',').count() {
        2 => numbers("p-grid", text, 2)?,
        3 => numbers("p-grid", text, 3)?,
        _ => {
            return Err(usage(format!(
                "--p-grid expects lo,hi[,stride], got `{text}`"
            )))
        }
    };
    let stride = parts.get(2).copied().unwrap_or(1);
    if parts[0] == 0 || parts[1] < parts[0] || stride == 0 {
        return Err(usage(format!(
            "--p-grid needs 1 ≤ lo ≤ hi and stride ≥ 1, got `{text}`"
        )));
    }
    Ok(p_range(parts[0], parts[1], stride))
}

fn one_source(args: &ProblemArgs) -> Result<(), CliError> {
    let given: Vec<&str> = [
        ("--fcidump", args.fcidump.is_some()),
        ("--dimacs", args.dimacs.is_some()),
        ("--ising", args.ising.is_some()),
        ("--random-sat", args.random_sat.is_some()),
        ("--random-ising", args.random_ising.is_some()),
    ]
    .iter()
    .filter(|(_, g)| *g)
    .map(|(f, _)| *f)
    .collect();
    if given.len() > 1 {
        return Err(usage(format!(
            "conflicting problem sources: {}",
            given.join(", ")
        )));
    }
    let allowed: &[&str] = match args.problem {
        ProblemKind::Chem => &["--fcidump"],
        ProblemKind::Sat => &["--dimacs", "--random-sat"],
        ProblemKind::Ising => &["--ising", "--random-ising"],
    };
    match given.first() {
        None => Err(usage(format!(
            "--problem needs one of {}",
            allowed.join(" | ")
        ))),
        Some(f) if !allowed.contains(f) => Err(usage(format!(
            "{f} does not apply to this --problem (expected {})",
            allowed.join(" | ")
        ))),
        Some(_) => Ok(()),
    }
}

pub fn build_instance(args: &ProblemArgs) -> Result<ProblemInstance, CliError> {
    one_source(args)?;
    match args.problem {
        ProblemKind::Chem => build_chem(args),
        ProblemKind::Sat | ProblemKind::Ising => build_classical(args),
    }
}

fn build_chem(args: &ProblemArgs) -> Result<ProblemInstance, CliError> {
    let ints = read_fcidump(args.fcidump.as_deref().expect("checked"))?;
    let ord = ordering(args.ordering);
    let mode = match args.hf_mixer {
        HfMixerArg::Diag => ChemistryMixer::DiagOfHe,
        HfMixerArg::Fock => ChemistryMixer::FockOrbital,
    };
    let base = build_chemistry_problem(&ints, mode, ord)?;
    let n = base.n_qubits();
    let hf = hf_bitstring(&ints, ord);
    let mixer = args.mixer.unwrap_or(MixerKind::Hf);
    if mixer == MixerKind::X && !args.full_space {
        return Err(usage(
            "--mixer x breaks the chemistry symmetry sector; pass --full-space to allow it",
        ));
    }
    let initial = args.initial.unwrap_or(match mixer {
        MixerKind::X => InitialArg::Uniform,
        MixerKind::Hf | MixerKind::Xy => InitialArg::Hf,
    });
    let k = args.dicke_k.unwrap_or(ints.n_electrons());
    let state = match initial {
        InitialArg::Hf => initial_state(InitialKind::HfBitstring(hf), n)?,
        InitialArg::Uniform => initial_state(InitialKind::Uniform, n)?,
        InitialArg::Dicke => initial_state(InitialKind::Dicke(k), n)?,
    };
    let spin_sector = if args.full_space {
        None
    } else {
        base.symmetry_sector().copied()
    };
    let number_sector = |particles: usize| {
        (!args.full_space).then_some(SymmetrySector {
            n_particles: particles,
            twice_sz: None,
            ordering: ord,
        })
    };
    let instance = match (mixer, initial) {
        (MixerKind::Hf, InitialArg::Hf) if !args.full_space => base,
        (MixerKind::Hf, _) => base.with_mixer(base.mixer().clone(), state, spin_sector)?,
        (MixerKind::X, _) => base.with_mixer(MixerSpec::TransverseX, state, None)?,
        (MixerKind::Xy, InitialArg::Uniform) => {
            base.with_mixer(MixerSpec::Xy(xy_mixer(n)?), state, None)?
        }
        (MixerKind::Xy, InitialArg::Dicke) => {
            base.with_mixer(MixerSpec::Xy(xy_mixer(n)?), state, number_sector(k))?
        }
        (MixerKind::Xy, InitialArg::Hf) => base.with_mixer(
            MixerSpec::Xy(xy_mixer(n)?),
            state,
            number_sector(ints.n_electrons()),
        )?,
    };
    Ok(instance)
}

fn build_classical(args: &ProblemArgs) -> Result<ProblemInstance, CliError> {
    let (label, cost) = match args.problem {
        ProblemKind::Sat => {
            let formula = if let Some(spec) = &args.random_sat {
                let v: Vec<u64> = numbers("random-sat", spec, 3)?;
                random_3sat(v[0] as usize, v[1] as usize, v[2])?
            } else {
                let path = args.dimacs.as_deref().expect("checked");
                let mode = if args.general_cnf {
                    DimacsMode::General
                } else {
                    DimacsMode::ThreeSat
                };
                parse_dimacs(&read_text(path)?, mode)?
            };
            let label = format!("sat(n={},m={})", formula.n_vars(), formula.clauses().len());
            (label, sat_cost(&formula)?)
        }
        _ => {
            let inst = if let Some(spec) = &args.random_ising {
                let v: Vec<u64> = numbers("random-ising", spec, 2)?;
                random_ising(v[0] as usize, v[1])?
            } else {
                IsingInstance::from_json_str(&read_text(args.ising.as_deref().expect("checked"))?)?
            };
            (format!("ising(n={})", inst.n_spins()), ising_cost(&inst)?)
        }
    };
    let n = cost.n_qubits();
    let mixer = args.mixer.unwrap_or(MixerKind::X);
    if mixer == MixerKind::Hf {
        return Err(usage("--mixer hf needs --problem chem"));
    }
    let initial = args.initial.unwrap_or(match mixer {
        MixerKind::Xy => InitialArg::Dicke,
        _ => InitialArg::Uniform,
    });
    let k = args.dicke_k.unwrap_or(n / 2);
    let state = match initial {
        InitialArg::Hf => return Err(usage("--initial hf needs --problem chem")),
        InitialArg::Uniform => initial_state(InitialKind::Uniform, n)?,
        InitialArg::Dicke => initial_state(InitialKind::Dicke(k), n)?,
    };
    let (mixer, sector) = match (mixer, initial) {
        (MixerKind::Xy, InitialArg::Dicke) => (
            MixerSpec::Xy(xy_mixer(n)?),
            Some(SymmetrySector::particles(k)),
        ),
        (MixerKind::Xy, _) => (MixerSpec::Xy(xy_mixer(n)?), None),
        _ => (MixerSpec::TransverseX, None),
    };
    Ok(ProblemInstance::new(
        label,
        CostOperator::Diagonal(cost),
        mixer,
        state,
        sector,
    )?)
}
