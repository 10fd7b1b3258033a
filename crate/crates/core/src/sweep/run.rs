use std::time::Instant;

use rayon::prelude::*;

use super::diagram::{CellFailure, PhaseDiagram, Provenance};
use super::grid::GridSpec;
use crate::error::{Error, Result};
use crate::problems::ProblemInstance;
use crate::qaoa::{squared_overlap, EvolveOptions, Evolver, Schedule};

/// Environment variable consulted when no thread count is given.
pub const THREADS_ENV: &str = "QAOA_LAB_THREADS";

/// Fraction of failed cells above which a sweep is an error.
pub const MAX_FAILED_FRACTION: f64 = 0.05;

#[derive(Clone, Copy, Debug, Default)]
pub struct SweepOptions {
    pub threads: Option<usize>,
    pub evolve: EvolveOptions,
}

/// Thread count from the environment, else the machine's parallelism.
pub fn default_threads() -> usize {
    std::env::var(THREADS_ENV)
        .ok()
        .and_then(|v| v.trim().parse::<usize>().ok())
        .filter(|&k| k > 0)
        .unwrap_or_else(|| std::thread::available_parallelism().map_or(1, |n| n.get()))
}

/// Evaluate every grid cell. Cells run independently on a dedicated pool and
/// land in fixed slots, so the result does not depend on the thread count.
pub fn run_sweep(
    instance: &ProblemInstance,
    grid: &GridSpec,
    opts: SweepOptions,
) -> Result<PhaseDiagram> {
    grid.validate()?;
    let start = Instant::now();
    let manifold = instance.ground_manifold()?;
    let initial_overlap = squared_overlap(instance.initial_state(), &manifold)?;
    let evolver = Evolver::with_options(instance, opts.evolve)?;
    let threads = opts.threads.unwrap_or_else(default_threads).max(1);
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(threads)
        .build()
        .map_err(|e| Error::InvalidArgument(format!("thread pool: {e}")))?;

    let deltas = grid.delta_values();
    let ps = grid.p_values();
    let warp = grid.warp();
    let cells: Vec<(usize, usize)> = (0..deltas.len())
        .flat_map(|i| (0..ps.len()).map(move |j| (i, j)))
        .collect();
    let results: Vec<Result<f64>> = pool.install(|| {
        cells
            .par_iter()
            .map(|&(i, j)| {
                let s = Schedule::from_warp(warp, deltas[i], ps[j])?;
                let run = evolver.evolve(&s)?;
                squared_overlap(&run.state, &manifold)
            })
            .collect()
    });

    let mut overlaps = vec![vec![None; ps.len()]; deltas.len()];
    let mut failures = Vec::new();
    for (&(i, j), r) in cells.iter().zip(results) {
        match r {
            Ok(v) => overlaps[i][j] = Some(v),
            Err(e) => failures.push(CellFailure {
                delta_index: i,
                p_index: j,
                message: e.to_string(),
            }),
        }
    }
    if failures.len() as f64 > MAX_FAILED_FRACTION * cells.len() as f64 {
        return Err(Error::Sweep {
            failed: failures.len(),
            total: cells.len(),
            first: failures[0].message.clone(),
        });
    }

    Ok(PhaseDiagram {
        grid: grid.clone(),
        overlaps,
        initial_overlap,
        provenance: Provenance {
            instance_label: instance.label().to_string(),
            schedule: grid.schedule().name().to_string(),
            tangent_c: grid.tangent_c(),
            delta_spacing: format!("{:?}", grid.delta_spacing()).to_lowercase(),
            tool_version: env!("CARGO_PKG_VERSION").to_string(),
            threads,
            elapsed_seconds: start.elapsed().as_secs_f64(),
            ground_energy: manifold.energy,
            ground_degeneracy: manifold.len(),
            continuous_time_convention: "T = delta * (p + 1)".to_string(),
        },
        failures,
    })
}
