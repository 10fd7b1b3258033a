//! Eigenphases of the single-step unitary `e^{-iΔ(1-F)H_B} e^{-iΔF H_C}` as
//! functions of the ramp fraction `f`, with continuity tracking.

use std::f64::consts::PI;

use nalgebra::DMatrix;
use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::problems::ProblemInstance;
use crate::qaoa::{EvolveOptions, Evolver, Warp};
use crate::simkernel::dense::{hermitian_eigh, operator_matrix};
use crate::simkernel::DENSE_DIM_LIMIT;

/// Two candidate overlaps closer than this make a track assignment ambiguous.
pub const AMBIGUITY_TOL: f64 = 1e-6;
/// Energies closer than this belong to the same cost level.
const LEVEL_TOL: f64 = 1e-8;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct WrapEvent {
    /// Grid index of the first point after the crossing.
    pub f_index: usize,
    pub f: f64,
    pub track: usize,
}

/// Where the track starting on the mixer ground state ends up.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct FollowedTrack {
    pub track: usize,
    /// `|<mixer ground|track>|²` at the first grid point.
    pub initial_mixer_overlap: f64,
    /// Index of the cost level (0 = ground) carrying most of the terminal eigenvector.
    pub terminal_level: usize,
    pub terminal_ground_overlap: f64,
    pub terminal_cost_energy: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct EigenphaseTrack {
    pub delta: f64,
    pub f_grid: Vec<f64>,
    /// Per grid point, eigenphases sorted ascending in `(-π, π]`.
    pub phases: Vec<Vec<f64>>,
    /// `assignment[k][t]` is the index into `phases[k]` held by track `t`.
    pub assignment: Vec<Vec<usize>>,
    /// `unwrapped[t][k]`: continuous phase of track `t`.
    pub unwrapped: Vec<Vec<f64>>,
    pub wrap_events: Vec<WrapEvent>,
    pub followed: FollowedTrack,
    pub warnings: Vec<String>,
}

impl EigenphaseTrack {
    pub fn n_tracks(&self) -> usize {
        self.unwrapped.len()
    }

    /// Phase of track `t` at grid point `k`, in `(-π, π]`.
    pub fn track_phase(&self, t: usize, k: usize) -> f64 {
        self.phases[k][self.assignment[k][t]]
    }
}

fn principal(x: f64) -> f64 {
    let mut y = x.rem_euclid(2.0 * PI);
    if y > PI {
        y -= 2.0 * PI;
    }
    y
}

/// Branch index `k` with `u ∈ (-π + 2πk, π + 2πk]`.
fn branch(u: f64) -> i64 {
    ((u - PI) / (2.0 * PI)).ceil() as i64
}

fn exp_hermitian(values: &[f64], vectors: &DMatrix<Complex64>, angle: f64) -> DMatrix<Complex64> {
    let mut scaled = vectors.clone();
    for (k, &lam) in values.iter().enumerate() {
        let phase = Complex64::from_polar(1.0, -angle * lam);
        scaled.column_mut(k).iter_mut().for_each(|x| *x *= phase);
    }
    &scaled * vectors.adjoint()
}

/// Sorted eigenphases and matching unit eigenvectors of a unitary.
fn unitary_eig(u: DMatrix<Complex64>) -> (Vec<f64>, Vec<Vec<Complex64>>) {
    let (q, t) = nalgebra::linalg::Schur::new(u).unpack();
    let dim = t.nrows();
    let mut pairs: Vec<(f64, Vec<Complex64>)> = (0..dim)
        .map(|k| {
            let lam = t[(k, k)];
            let mut phi = lam.im.atan2(lam.re);
            if phi <= -PI {
                phi = PI;
            }
            (phi, q.column(k).iter().copied().collect())
        })
        .collect();
    pairs.sort_by(|a, b| a.0.total_cmp(&b.0));
    pairs.into_iter().unzip()
}

fn overlap(a: &[Complex64], b: &[Complex64]) -> f64 {
    a.iter()
        .zip(b)
        .map(|(x, y)| x.conj() * y)
        .sum::<Complex64>()
        .norm_sqr()
}

/// Build tracks over `f_grid` for ramp magnitude `delta`. Instances with a
/// symmetry sector are analysed inside it.
pub fn step_unitary_eigenphases(
    instance: &ProblemInstance,
    delta: f64,
    f_grid: &[f64],
    warp: Warp,
) -> Result<EigenphaseTrack> {
    if f_grid.is_empty() {
        return Err(Error::InvalidArgument("empty f grid".into()));
    }
    if f_grid.iter().any(|f| !(0.0..=1.0).contains(f)) {
        return Err(Error::InvalidArgument("f values must lie in [0, 1]".into()));
    }
    let opts = EvolveOptions {
        sector_mode: instance.sector_basis().is_some(),
        dense: false,
        ..EvolveOptions::default()
    };
    let ev = Evolver::with_options(instance, opts)?;
    let dim = ev.basis().dim(ev.n_qubits());
    if dim > DENSE_DIM_LIMIT {
        return Err(Error::Capacity {
            what: "step-unitary eigendecomposition",
            requested: instance.n_qubits(),
            limit: DENSE_DIM_LIMIT.trailing_zeros() as usize,
        });
    }
    let (lb, vb) = hermitian_eigh(&operator_matrix(ev.mixer_operator()));
    let (lc, vc) = hermitian_eigh(&operator_matrix(ev.cost_operator()));

    let mut phases = Vec::with_capacity(f_grid.len());
    let mut assignment: Vec<Vec<usize>> = Vec::with_capacity(f_grid.len());
    let mut unwrapped = vec![Vec::with_capacity(f_grid.len()); dim];
    let mut wrap_events = Vec::new();
    let mut warnings = Vec::new();
    let mut track_vecs: Vec<Vec<Complex64>> = Vec::new();
    let mut first_vecs: Vec<Vec<Complex64>> = Vec::new();

    for (k, &f) in f_grid.iter().enumerate() {
        let w = warp.eval(f);
        let u = exp_hermitian(&lb, &vb, delta * (1.0 - w)) * exp_hermitian(&lc, &vc, delta * w);
        let (ph, vecs) = unitary_eig(u);
        if k == 0 {
            assignment.push((0..dim).collect());
            for t in 0..dim {
                unwrapped[t].push(ph[t]);
            }
            first_vecs = vecs.clone();
            track_vecs = vecs;
            phases.push(ph);
            continue;
        }

        // greedy maximal-overlap matching
        let mut pairs: Vec<(f64, usize, usize)> = Vec::with_capacity(dim * dim);
        for (t, prev) in track_vecs.iter().enumerate() {
            for (l, cur) in vecs.iter().enumerate() {
                pairs.push((overlap(prev, cur), t, l));
            }
        }
        let best_by_track: Vec<(f64, f64)> = (0..dim)
            .map(|t| {
                let mut row: Vec<f64> = pairs[t * dim..(t + 1) * dim].iter().map(|p| p.0).collect();
                row.sort_by(|a, b| b.total_cmp(a));
                (row[0], row.get(1).copied().unwrap_or(0.0))
            })
            .collect();
        pairs.sort_by(|a, b| b.0.total_cmp(&a.0).then(a.1.cmp(&b.1)).then(a.2.cmp(&b.2)));
        let mut of_track = vec![usize::MAX; dim];
        let mut taken = vec![false; dim];
        let mut left = dim;
        for &(_, t, l) in &pairs {
            if left == 0 {
                break;
            }
            if of_track[t] == usize::MAX && !taken[l] {
                of_track[t] = l;
                taken[l] = true;
                left -= 1;
            }
        }
        for (t, &(best, second)) in best_by_track.iter().enumerate() {
            if best - second < AMBIGUITY_TOL {
                warnings.push(format!(
                    "f = {f}: ambiguous match for track {t} (overlaps {best:.6}, {second:.6})"
                ));
            }
            let l = of_track[t];
            let prev_raw = phases[k - 1][assignment[k - 1][t]];
            let prev_u = *unwrapped[t].last().expect("seeded");
            let u = prev_u + principal(ph[l] - prev_raw);
            if branch(u) != branch(prev_u) {
                wrap_events.push(WrapEvent {
                    f_index: k,
                    f,
                    track: t,
                });
            }
            unwrapped[t].push(u);
        }
        track_vecs = of_track.iter().map(|&l| vecs[l].clone()).collect();
        assignment.push(of_track);
        phases.push(ph);
    }

    // follow the track that starts on the mixer ground state
    let mixer_ground: Vec<Complex64> = vb.column(0).iter().copied().collect();
    let (track, initial_mixer_overlap) = first_vecs
        .iter()
        .enumerate()
        .map(|(t, v)| (t, overlap(&mixer_ground, v)))
        .fold((0, -1.0), |acc, x| if x.1 > acc.1 { x } else { acc });
    let terminal = &track_vecs[track];
    let mut level_of = Vec::with_capacity(dim);
    let mut level = 0;
    for k in 0..dim {
        if k > 0 && lc[k] - lc[k - 1] > LEVEL_TOL {
            level += 1;
        }
        level_of.push(level);
    }
    let mut weights = vec![0.0; level + 1];
    let mut energy = 0.0;
    for k in 0..dim {
        let w = overlap(&vc.column(k).iter().copied().collect::<Vec<_>>(), terminal);
        weights[level_of[k]] += w;
        energy += w * lc[k];
    }
    let terminal_level = weights
        .iter()
        .enumerate()
        .fold(
            (0, -1.0),
            |acc, (i, &w)| if w > acc.1 { (i, w) } else { acc },
        )
        .0;

    Ok(EigenphaseTrack {
        delta,
        f_grid: f_grid.to_vec(),
        phases,
        assignment,
        unwrapped,
        wrap_events,
        followed: FollowedTrack {
            track,
            initial_mixer_overlap,
            terminal_level,
            terminal_ground_overlap: weights[0],
            terminal_cost_energy: energy,
        },
        warnings,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn branch_boundaries() {
        assert_eq!(branch(PI), 0);
        assert_eq!(branch(-PI + 1e-12), 0);
        assert_eq!(branch(PI + 1e-12), 1);
        assert_eq!(branch(-PI), -1);
    }

    #[test]
    fn principal_range() {
        assert!((principal(3.0 * PI / 2.0) + PI / 2.0).abs() < 1e-15);
        assert_eq!(principal(PI), PI);
    }
}
