mod args;
mod build;

use std::fs;
use std::process::ExitCode;

use clap::error::ErrorKind;
use clap::Parser;
use qaoa_lab::hamcore::jordan_wigner;
use qaoa_lab::qaoa::{squared_overlap, Warp, DEFAULT_TANGENT_C};
use qaoa_lab::sweep::{
    default_threads, delta_crit, export, linear_points, run_sweep, step_unitary_eigenphases,
    DeltaCrit, DeltaCritRule, ExportFormat, GridSpec, SweepOptions,
};
use qaoa_lab::Error;

use args::{Cli, Command, ConvertArgs, EigenphaseArgs, FormatArg, ProblemArgs, SweepArgs};

pub enum CliError {
    Usage(String),
    Lib(Error),
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        CliError::Lib(e)
    }
}

impl CliError {
    fn exit_code(&self) -> u8 {
        match self {
            CliError::Usage(_) => 1,
            CliError::Lib(e) => match e {
                Error::Convergence { .. }
                | Error::Stability { .. }
                | Error::Step { .. }
                | Error::Sweep { .. }
                | Error::NotHermitian(_) => 2,
                _ => 1,
            },
        }
    }
}

fn write_file(path: &std::path::Path, text: &str) -> Result<(), CliError> {
    fs::write(path, text).map_err(|e| {
        CliError::Lib(Error::Io {
            path: path.to_path_buf(),
            source: e,
        })
    })
}

fn sweep(args: SweepArgs) -> Result<(), CliError> {
    let instance = build::build_instance(&args.problem)?;
    let kind = build::schedule(args.schedule);
    let mut grid = GridSpec::default_grid(kind, instance.label());
    let deltas = match &args.delta_grid {
        Some(text) => Some(build::delta_grid(text)?),
        None => None,
    };
    let ps = match &args.p_grid {
        Some(text) => build::p_grid(text)?,
        None => grid.p_values().to_vec(),
    };
    let (delta_values, spacing) =
        deltas.unwrap_or((grid.delta_values().to_vec(), grid.delta_spacing()));
    grid = GridSpec::new(delta_values, ps, kind, instance.label())?.with_spacing(spacing);
    grid = grid.with_tangent_c(args.tangent_c.unwrap_or(DEFAULT_TANGENT_C))?;
    if args.threads == Some(0) {
        return Err(CliError::Usage("--threads must be at least 1".into()));
    }
    let threads = args.threads.unwrap_or_else(default_threads);
    let pd = run_sweep(
        &instance,
        &grid,
        SweepOptions {
            threads: Some(threads),
            ..SweepOptions::default()
        },
    )?;
    let format = match args.format {
        Some(FormatArg::Json) => ExportFormat::Json,
        Some(FormatArg::Csv) => ExportFormat::Csv,
        None if args.out.extension().is_some_and(|e| e == "json") => ExportFormat::Json,
        None => ExportFormat::Csv,
    };
    export(&pd, format, &args.out)?;
    let crit = delta_crit(&pd, DeltaCritRule::FirstDropBelowInitial);
    let last = match crit.last() {
        Some(DeltaCrit::At(d)) => format!("{d}"),
        Some(DeltaCrit::BelowAtFirst) => "below at first Δ".into(),
        _ => "absent".into(),
    };
    println!(
        "{}: {} cells ({} failed), initial overlap {:.6}, Δ_crit(p={}) {last}, wrote {}",
        instance.label(),
        grid.n_cells(),
        pd.failures.len(),
        pd.initial_overlap,
        grid.p_values().last().expect("non-empty"),
        args.out.display()
    );
    for w in instance.warnings() {
        eprintln!("warning: {w}");
    }
    Ok(())
}

fn ground(args: ProblemArgs) -> Result<(), CliError> {
    let instance = build::build_instance(&args)?;
    let manifold = instance.ground_manifold()?;
    let initial = squared_overlap(instance.initial_state(), &manifold)?;
    println!("instance {}", instance.label());
    println!("qubits {}", instance.n_qubits());
    println!("energy {:.12}", manifold.energy);
    println!("degeneracy {}", manifold.len());
    println!("initial_overlap {:.12}", initial);
    for w in instance.warnings() {
        println!("warning {w}");
    }
    Ok(())
}

fn eigenphase(args: EigenphaseArgs) -> Result<(), CliError> {
    let instance = build::build_instance(&args.problem)?;
    if args.f_points < 2 {
        return Err(CliError::Usage("--f-points must be at least 2".into()));
    }
    if !(args.delta > 0.0) {
        return Err(CliError::Usage("--delta must be positive".into()));
    }
    let warp = Warp::new(
        build::schedule(args.schedule),
        args.tangent_c.unwrap_or(DEFAULT_TANGENT_C),
    )?;
    let f_grid = linear_points(0.0, 1.0, args.f_points);
    let track = step_unitary_eigenphases(&instance, args.delta, &f_grid, warp)?;
    println!("delta {}", args.delta);
    println!("tracks {}", track.n_tracks());
    println!("wrap_events {}", track.wrap_events.len());
    for e in &track.wrap_events {
        println!("  wrap track {} at f {:.6}", e.track, e.f);
    }
    let fo = &track.followed;
    println!(
        "followed track {} (mixer-ground overlap {:.6}) ends on cost level {} (ground weight {:.6}, energy {:.9})",
        fo.track, fo.initial_mixer_overlap, fo.terminal_level, fo.terminal_ground_overlap, fo.terminal_cost_energy
    );
    for w in &track.warnings {
        eprintln!("warning: {w}");
    }
    if let Some(out) = &args.out {
        let text = serde_json::to_string_pretty(&track).map_err(Error::from)?;
        write_file(out, &text)?;
    }
    Ok(())
}

fn convert(args: ConvertArgs) -> Result<(), CliError> {
    let ints = build::read_fcidump(&args.fcidump)?;
    let h = jordan_wigner(&ints, build::ordering(args.ordering))?;
    write_file(&args.out, &h.to_json_string()?)?;
    println!(
        "{} qubits, {} terms, wrote {}",
        h.n_qubits(),
        h.len(),
        args.out.display()
    );
    Ok(())
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => ExitCode::SUCCESS,
                _ => ExitCode::from(1),
            };
        }
    };
    let result = match cli.command {
        Command::Sweep(a) => sweep(a),
        Command::Ground(a) => ground(a),
        Command::Eigenphase(a) => eigenphase(a),
        Command::Convert(a) => convert(a),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            let code = e.exit_code();
            match e {
                CliError::Usage(msg) => eprintln!("error: {msg}"),
                CliError::Lib(err) => eprintln!("error: {err}"),
            }
            ExitCode::from(code)
        }
    }
}
