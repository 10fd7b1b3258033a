//! Lanczos-based Krylov methods: the action of `exp(-iτH)` on a vector and
//! lowest eigenpairs.
//!
//! Both build an orthonormal Krylov basis with full reorthogonalization, so the
//! projected matrix is a real symmetric tridiagonal `T` whose dense
//! eigendecomposition is cheap.

use nalgebra::DMatrix;
use num_complex::Complex64;

use super::operator::{CompiledPauli, HermitianOperator};
use super::state::StateVector;
use crate::error::{Error, Result};
use crate::hamcore::PauliSum;

pub const DEFAULT_KRYLOV_DIM: usize = 30;
pub const DEFAULT_KRYLOV_TOL: f64 = 1e-10;
/// Relative norm drift above which an exponential is rejected.
pub const NORM_DRIFT_LIMIT: f64 = 1e-9;

const MAX_HALVINGS: usize = 60;
const MAX_RESTARTS: usize = 100_000;

#[derive(Clone, Copy, Debug)]
pub struct KrylovOptions {
    pub krylov_dim: usize,
    pub tol: f64,
}

impl Default for KrylovOptions {
    fn default() -> Self {
        Self {
            krylov_dim: DEFAULT_KRYLOV_DIM,
            tol: DEFAULT_KRYLOV_TOL,
        }
    }
}

fn dot(a: &[Complex64], b: &[Complex64]) -> Complex64 {
    a.iter().zip(b).map(|(x, y)| x.conj() * y).sum()
}

fn norm(a: &[Complex64]) -> f64 {
    a.iter().map(|x| x.norm_sqr()).sum::<f64>().sqrt()
}

/// Orthonormal Krylov basis and tridiagonal projection.
struct Lanczos {
    basis: Vec<Vec<Complex64>>,
    alpha: Vec<f64>,
    beta: Vec<f64>,
    /// `β_m`, the coupling to the first vector not kept.
    residual_beta: f64,
    invariant: bool,
}

fn orthogonalize(w: &mut [Complex64], against: &[Vec<Complex64>]) {
    // classical Gram-Schmidt, applied twice
    for _ in 0..2 {
        for q in against {
            let c = dot(q, w);
            for (wi, qi) in w.iter_mut().zip(q) {
                *wi -= c * qi;
            }
        }
    }
}

fn build_lanczos(
    op: &dyn HermitianOperator,
    start: &[Complex64],
    max_dim: usize,
    deflate: &[Vec<Complex64>],
) -> Lanczos {
    let dim = start.len();
    let scale = op.spectral_width_bound().max(1.0);
    let breakdown = 1e-13 * scale;
    let mut first = start.to_vec();
    orthogonalize(&mut first, deflate);
    let n0 = norm(&first);
    first.iter_mut().for_each(|x| *x /= n0);

    let mut out = Lanczos {
        basis: vec![first],
        alpha: Vec::new(),
        beta: Vec::new(),
        residual_beta: 0.0,
        invariant: false,
    };
    let limit = max_dim.min(dim.saturating_sub(deflate.len())).max(1);
    let mut w = vec![Complex64::new(0.0, 0.0); dim];
    loop {
        let j = out.basis.len() - 1;
        op.apply_into(&out.basis[j], &mut w);
        let a = dot(&out.basis[j], &w).re;
        out.alpha.push(a);
        orthogonalize(&mut w, deflate);
        orthogonalize(&mut w, &out.basis);
        let b = norm(&w);
        if b <= breakdown {
            out.invariant = true;
            out.residual_beta = 0.0;
            break;
        }
        if out.basis.len() == limit {
            out.residual_beta = b;
            out.invariant = out.basis.len() + deflate.len() >= dim;
            break;
        }
        out.beta.push(b);
        out.basis.push(w.iter().map(|x| x / b).collect());
    }
    out
}

impl Lanczos {
    fn tridiagonal_eigh(&self) -> (Vec<f64>, DMatrix<f64>) {
        let m = self.alpha.len();
        let mut t = DMatrix::<f64>::zeros(m, m);
        for i in 0..m {
            t[(i, i)] = self.alpha[i];
            if i + 1 < m {
                t[(i, i + 1)] = self.beta[i];
                t[(i + 1, i)] = self.beta[i];
            }
        }
        let eig = t.symmetric_eigen();
        let mut order: Vec<usize> = (0..m).collect();
        order.sort_by(|&a, &b| eig.eigenvalues[a].total_cmp(&eig.eigenvalues[b]));
        let values = order.iter().map(|&k| eig.eigenvalues[k]).collect();
        let mut vecs = DMatrix::<f64>::zeros(m, m);
        for (dst, &src) in order.iter().enumerate() {
            vecs.set_column(dst, &eig.eigenvectors.column(src));
        }
        (values, vecs)
    }

    fn combine(&self, coeffs: &[Complex64], scale: f64) -> Vec<Complex64> {
        let dim = self.basis[0].len();
        let mut out = vec![Complex64::new(0.0, 0.0); dim];
        for (q, c) in self.basis.iter().zip(coeffs) {
            let c = c * scale;
            for (o, x) in out.iter_mut().zip(q) {
                *o += c * x;
            }
        }
        out
    }
}

/// `exp(-i·angle·H) v` on raw amplitudes by restarted Lanczos time stepping.
/// Each accepted substep of length `s` keeps the a-posteriori estimate
/// `β_m |e_m^T exp(-isT) e_1|` below `tol · |s| / |angle|`.
pub fn expm_krylov_amplitudes(
    op: &dyn HermitianOperator,
    angle: f64,
    v: &[Complex64],
    opts: KrylovOptions,
) -> Result<Vec<Complex64>> {
    let input_norm = norm(v);
    if angle == 0.0 || input_norm == 0.0 {
        return Ok(v.to_vec());
    }
    let total = angle.abs();
    let direction = angle.signum();
    let mut current: Vec<Complex64> = v.iter().map(|x| x / input_norm).collect();
    let mut done = 0.0f64;
    let mut step = total;
    let mut restarts = 0usize;

    while done < total {
        restarts += 1;
        if restarts > MAX_RESTARTS {
            return Err(Error::Convergence {
                what: "Krylov exponential",
                residual: f64::NAN,
            });
        }
        let lz = build_lanczos(op, &current, opts.krylov_dim.max(2), &[]);
        let (theta, s) = lz.tridiagonal_eigh();
        let m = theta.len();
        let first_row: Vec<f64> = (0..m).map(|k| s[(0, k)]).collect();
        let propagate = |tau: f64| -> Vec<Complex64> {
            (0..m)
                .map(|i| {
                    (0..m)
                        .map(|k| {
                            let (sn, cs) = (-tau * theta[k]).sin_cos();
                            Complex64::new(cs, sn) * (s[(i, k)] * first_row[k])
                        })
                        .sum()
                })
                .collect()
        };

        let remaining = total - done;
        let mut s_try = step.min(remaining);
        let mut halvings = 0usize;
        let (coeffs, taken) = loop {
            let y = propagate(direction * s_try);
            let err = if lz.invariant {
                0.0
            } else {
                lz.residual_beta * y[m - 1].norm()
            };
            if err <= opts.tol * s_try / total || lz.invariant {
                break (y, s_try);
            }
            halvings += 1;
            if halvings > MAX_HALVINGS {
                return Err(Error::Convergence {
                    what: "Krylov exponential",
                    residual: err,
                });
            }
            s_try *= 0.5;
        };
        current = lz.combine(&coeffs, 1.0);
        done += taken;
        if remaining - taken <= total * 1e-15 {
            done = total;
        }
        // allow the step to grow again after a success
        step = if halvings == 0 { taken * 2.0 } else { taken };
    }

    let out_norm = norm(&current);
    let drift = (out_norm - 1.0).abs();
    if drift >= NORM_DRIFT_LIMIT {
        return Err(Error::Stability { drift });
    }
    let scale = input_norm / out_norm;
    current.iter_mut().for_each(|x| *x *= scale);
    Ok(current)
}

/// Lanczos approximation of `exp(-i·angle·h) v`.
pub fn expm_krylov(
    h: &PauliSum,
    angle: f64,
    v: &StateVector,
    krylov_dim: usize,
    tol: f64,
) -> Result<StateVector> {
    if h.n_qubits() != v.n_qubits() {
        return Err(Error::Shape(format!(
            "{}-qubit operator on {}-qubit state",
            h.n_qubits(),
            v.n_qubits()
        )));
    }
    let op = CompiledPauli::with_basis(h, v.basis().clone())?;
    let amps = expm_krylov_amplitudes(
        &op,
        angle,
        v.amplitudes(),
        KrylovOptions { krylov_dim, tol },
    )?;
    StateVector::new(v.n_qubits(), amps, v.basis().clone())
}

/// Lowest eigenpair in the orthogonal complement of `deflate`, by restarted Lanczos.
pub(crate) fn lanczos_lowest(
    op: &dyn HermitianOperator,
    start: &[Complex64],
    deflate: &[Vec<Complex64>],
    max_dim: usize,
    tol: f64,
    max_restarts: usize,
) -> Result<(f64, Vec<Complex64>)> {
    let mut current = start.to_vec();
    let mut last_residual = f64::INFINITY;
    for _ in 0..max_restarts {
        let lz = build_lanczos(op, &current, max_dim, deflate);
        let (theta, s) = lz.tridiagonal_eigh();
        let m = theta.len();
        let coeffs: Vec<Complex64> = (0..m).map(|i| Complex64::new(s[(i, 0)], 0.0)).collect();
        let mut ritz = lz.combine(&coeffs, 1.0);
        orthogonalize(&mut ritz, deflate);
        let n = norm(&ritz);
        ritz.iter_mut().for_each(|x| *x /= n);
        // true residual, independent of the recurrence
        let mut hv = vec![Complex64::new(0.0, 0.0); ritz.len()];
        op.apply_into(&ritz, &mut hv);
        let lambda = dot(&ritz, &hv).re;
        let residual = hv
            .iter()
            .zip(&ritz)
            .map(|(a, b)| (a - b * lambda).norm_sqr())
            .sum::<f64>()
            .sqrt();
        last_residual = residual;
        if residual <= tol || lz.invariant && residual <= tol.max(1e-8) {
            return Ok((lambda, ritz));
        }
        current = ritz;
    }
    Err(Error::Convergence {
        what: "Lanczos ground state",
        residual: last_residual,
    })
}
