use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Parser, Debug)]
#[command(
    name = "qaoa-lab",
    version,
    about = "QAOA phase diagrams on exact statevectors"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Evaluate squared ground-state overlap over a (Δ, p) grid
    Sweep(SweepArgs),
    /// Report ground energy, degeneracy and initial overlap
    Ground(ProblemArgs),
    /// Step-unitary eigenphase tracks at a fixed Δ
    Eigenphase(EigenphaseArgs),
    /// Convert an FCIDUMP file to the Pauli-sum JSON format
    Convert(ConvertArgs),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum ProblemKind {
    Chem,
    Sat,
    Ising,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum MixerKind {
    Hf,
    X,
    Xy,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum InitialArg {
    Hf,
    Uniform,
    Dicke,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum HfMixerArg {
    /// Diagonal of the electronic Hamiltonian
    Diag,
    /// Sum of occupied one-body diagonals
    Fock,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum OrderingArg {
    Interleaved,
    Blocked,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum ScheduleArg {
    Linear,
    Root,
    Tangent,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum FormatArg {
    Csv,
    Json,
}

#[derive(Args, Debug)]
pub struct ProblemArgs {
    #[arg(long, value_enum)]
    pub problem: ProblemKind,
    #[arg(long)]
    pub fcidump: Option<PathBuf>,
    #[arg(long)]
    pub dimacs: Option<PathBuf>,
    /// Accept DIMACS clauses of any width
    #[arg(long)]
    pub general_cnf: bool,
    #[arg(long)]
    pub ising: Option<PathBuf>,
    /// n,m,seed
    #[arg(long)]
    pub random_sat: Option<String>,
    /// n,seed
    #[arg(long)]
    pub random_ising: Option<String>,
    #[arg(long, value_enum)]
    pub mixer: Option<MixerKind>,
    #[arg(long, value_enum)]
    pub initial: Option<InitialArg>,
    /// Excitation count of the Dicke initial state (default n/2, or the electron count)
    #[arg(long)]
    pub dicke_k: Option<usize>,
    #[arg(long, value_enum, default_value = "diag")]
    pub hf_mixer: HfMixerArg,
    #[arg(long, value_enum, default_value = "interleaved")]
    pub ordering: OrderingArg,
    /// Drop the chemistry symmetry sector (required for the X mixer)
    #[arg(long)]
    pub full_space: bool,
}

#[derive(Args, Debug)]
pub struct SweepArgs {
    #[command(flatten)]
    pub problem: ProblemArgs,
    #[arg(long, value_enum, default_value = "linear")]
    pub schedule: ScheduleArg,
    #[arg(long)]
    pub tangent_c: Option<f64>,
    /// lo,hi,count[,log]
    #[arg(long)]
    pub delta_grid: Option<String>,
    /// lo,hi[,stride]
    #[arg(long)]
    pub p_grid: Option<String>,
    #[arg(long)]
    pub out: PathBuf,
    #[arg(long, value_enum)]
    pub format: Option<FormatArg>,
    #[arg(long)]
    pub threads: Option<usize>,
}

#[derive(Args, Debug)]
pub struct EigenphaseArgs {
    #[command(flatten)]
    pub problem: ProblemArgs,
    #[arg(long)]
    pub delta: f64,
    #[arg(long, default_value_t = 201)]
    pub f_points: usize,
    #[arg(long, value_enum, default_value = "linear")]
    pub schedule: ScheduleArg,
    #[arg(long)]
    pub tangent_c: Option<f64>,
    /// Write the full track data as JSON
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Args, Debug)]
pub struct ConvertArgs {
    #[arg(long)]
    pub fcidump: PathBuf,
    #[arg(long)]
    pub out: PathBuf,
    #[arg(long, value_enum, default_value = "interleaved")]
    pub ordering: OrderingArg,
}
