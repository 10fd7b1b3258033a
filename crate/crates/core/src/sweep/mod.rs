//! Phase-diagram production: grid sweeps, Δ_crit, eigenphase diagnostics, persistence.

mod diagram;
mod eigenphase;
mod grid;
mod io;
mod run;

pub use diagram::{
    delta_crit, CellFailure, DeltaCrit, DeltaCritRule, PhaseDiagram, Provenance, DROP_TOL,
};
pub use eigenphase::{
    step_unitary_eigenphases, EigenphaseTrack, FollowedTrack, WrapEvent, AMBIGUITY_TOL,
};
pub use grid::{
    linear_points, log_points, p_range, DeltaSpacing, GridSpec, DEFAULT_DELTA_COUNT,
    DEFAULT_DELTA_RANGE, DEFAULT_P_MAX,
};
pub use io::{
    export, format_sig12, import, parse_csv, sidecar_path, to_csv, ExportFormat, CSV_CORNER,
};
pub use run::{default_threads, run_sweep, SweepOptions, MAX_FAILED_FRACTION, THREADS_ENV};
