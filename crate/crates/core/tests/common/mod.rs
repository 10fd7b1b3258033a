//! Independent reference constructions used as test oracles.
#![allow(dead_code)]

use nalgebra::DMatrix;
use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use qaoa_lab::basis::SpinOrdering;
use qaoa_lab::hamcore::{parse_fcidump, MolecularIntegrals, PauliString, PauliSum};
use qaoa_lab::problems::{
    build_chemistry_problem, initial_state, ising_cost, random_ising, ChemistryMixer, CostOperator,
    InitialKind, MixerSpec, ProblemInstance,
};
use qaoa_lab::simkernel::StateVector;

pub type CMat = DMatrix<Complex64>;

pub fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

pub fn h2_integrals() -> MolecularIntegrals {
    let path = concat!(env!("CARGO_MANIFEST_DIR"), "/tests/data/h2_sto3g.fcidump");
    parse_fcidump(&std::fs::read_to_string(path).unwrap()).unwrap()
}

pub fn h2_instance() -> ProblemInstance {
    build_chemistry_problem(
        &h2_integrals(),
        ChemistryMixer::DiagOfHe,
        SpinOrdering::Interleaved,
    )
    .unwrap()
}

pub fn ising_x_instance(n: usize, seed: u64) -> ProblemInstance {
    let inst = random_ising(n, seed).unwrap();
    ProblemInstance::new(
        format!("ising(n={n},seed={seed})"),
        CostOperator::Diagonal(ising_cost(&inst).unwrap()),
        MixerSpec::TransverseX,
        initial_state(InitialKind::Uniform, n).unwrap(),
        None,
    )
    .unwrap()
}

// ---------- dense Pauli matrices by Kronecker products ----------

fn single(letter: char) -> CMat {
    let (o, z, i) = (c(1.0, 0.0), c(0.0, 0.0), c(0.0, 1.0));
    match letter {
        'I' => CMat::from_row_slice(2, 2, &[o, z, z, o]),
        'X' => CMat::from_row_slice(2, 2, &[z, o, o, z]),
        'Y' => CMat::from_row_slice(2, 2, &[z, -i, i, z]),
        'Z' => CMat::from_row_slice(2, 2, &[o, z, z, -o]),
        _ => panic!("bad letter"),
    }
}

/// Letter `k` acts on qubit `k`, i.e. on bit `k` of the basis index, so the
/// Kronecker product runs from the last letter to the first.
pub fn kron_string(letters: &str) -> CMat {
    let mut m = CMat::identity(1, 1);
    for ch in letters.chars().rev() {
        m = m.kronecker(&single(ch));
    }
    m
}

pub fn kron_sum(h: &PauliSum) -> CMat {
    let dim = 1usize << h.n_qubits();
    let mut m = CMat::zeros(dim, dim);
    for (coeff, s) in h.terms() {
        m += kron_string(&s.to_letters()) * *coeff;
    }
    m
}

/// Taylor series with scaling and squaring.
pub fn expm(a: &CMat) -> CMat {
    let norm: f64 = a.iter().map(|x| x.norm()).fold(0.0, f64::max) * a.nrows() as f64;
    let mut squarings = 0;
    let mut scale = 1.0;
    while norm * scale > 0.25 {
        scale *= 0.5;
        squarings += 1;
    }
    let x = a * c(scale, 0.0);
    let dim = a.nrows();
    let mut term = CMat::identity(dim, dim);
    let mut sum = term.clone();
    for k in 1..30 {
        term = &term * &x * c(1.0 / k as f64, 0.0);
        sum += &term;
    }
    for _ in 0..squarings {
        sum = &sum * &sum;
    }
    sum
}

/// `exp(-i·angle·H) v` by the Taylor oracle.
pub fn dense_evolve(h: &CMat, angle: f64, v: &[Complex64]) -> Vec<Complex64> {
    let u = expm(&(h * c(0.0, -angle)));
    let x = nalgebra::DVector::from_column_slice(v);
    (u * x).iter().copied().collect()
}

pub fn matvec(m: &CMat, v: &[Complex64]) -> Vec<Complex64> {
    (m * nalgebra::DVector::from_column_slice(v))
        .iter()
        .copied()
        .collect()
}

pub fn max_diff(a: &[Complex64], b: &[Complex64]) -> f64 {
    assert_eq!(a.len(), b.len());
    a.iter()
        .zip(b)
        .map(|(x, y)| (x - y).norm())
        .fold(0.0, f64::max)
}

// ---------- random objects ----------

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn random_letters(rng: &mut ChaCha8Rng, n: usize) -> String {
    (0..n)
        .map(|_| ['I', 'X', 'Y', 'Z'][rng.random_range(0..4)])
        .collect()
}

/// Hermitian sum with real coefficients on `n` qubits.
pub fn random_hermitian(rng: &mut ChaCha8Rng, n: usize, terms: usize) -> PauliSum {
    let list: Vec<(Complex64, PauliString)> = (0..terms)
        .map(|_| {
            (
                c(rng.random_range(-1.0..1.0), 0.0),
                PauliString::from_letters(&random_letters(rng, n)).unwrap(),
            )
        })
        .collect();
    PauliSum::from_terms(n, list).unwrap()
}

pub fn random_complex_sum(rng: &mut ChaCha8Rng, n: usize, terms: usize) -> PauliSum {
    let list: Vec<(Complex64, PauliString)> = (0..terms)
        .map(|_| {
            (
                c(rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0)),
                PauliString::from_letters(&random_letters(rng, n)).unwrap(),
            )
        })
        .collect();
    PauliSum::from_terms(n, list).unwrap()
}

pub fn random_state(rng: &mut ChaCha8Rng, n: usize) -> StateVector {
    let amps = (0..1usize << n)
        .map(|_| c(rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0)))
        .collect();
    StateVector::full(n, amps).unwrap().normalized().unwrap()
}

pub fn random_integrals(
    rng: &mut ChaCha8Rng,
    n_spatial: usize,
    n_electrons: usize,
    ms2: i64,
) -> MolecularIntegrals {
    let mut ints = MolecularIntegrals::new(n_spatial, n_electrons, ms2).unwrap();
    ints.set_core_energy(rng.random_range(0.0..1.0));
    for i in 0..n_spatial {
        for j in 0..=i {
            let v = if i == j {
                rng.random_range(-2.0..-0.2)
            } else {
                rng.random_range(-0.3..0.3)
            };
            ints.set_one_body(i, j, v).unwrap();
        }
    }
    for i in 0..n_spatial {
        for j in 0..n_spatial {
            for k in 0..n_spatial {
                for l in 0..n_spatial {
                    let v = rng.random_range(0.0..0.5);
                    ints.set_two_body(i, j, k, l, v).unwrap();
                }
            }
        }
    }
    ints
}

// ---------- fermions by explicit occupation-number bookkeeping ----------

/// `a†_k` on the Fock space of `n` modes; mode `k` is bit `k`.
pub fn fock_creation(n: usize, k: usize) -> CMat {
    let dim = 1usize << n;
    let mut m = CMat::zeros(dim, dim);
    for b in 0..dim {
        if b >> k & 1 == 0 {
            let below = (b & ((1 << k) - 1)).count_ones();
            let sign = if below.is_multiple_of(2) { 1.0 } else { -1.0 };
            m[(b | 1 << k, b)] = c(sign, 0.0);
        }
    }
    m
}

/// Spin-orbital index for (spatial, spin) with spin 0 = up, interleaved.
pub fn so(spatial: usize, spin: usize) -> usize {
    2 * spatial + spin
}

/// `H = E_core + Σ h_pq a†_pσ a_qσ + ½ Σ (pq|rs) a†_pσ a†_rτ a_sτ a_qσ`, built
/// from explicit Fock-space matrices.
pub fn fock_hamiltonian(ints: &MolecularIntegrals) -> CMat {
    let ns = ints.n_spatial();
    let n = 2 * ns;
    let dim = 1usize << n;
    let cr: Vec<CMat> = (0..n).map(|k| fock_creation(n, k)).collect();
    let an: Vec<CMat> = cr.iter().map(|m| m.adjoint()).collect();
    let mut h = CMat::identity(dim, dim) * c(ints.core_energy(), 0.0);
    for p in 0..ns {
        for q in 0..ns {
            let v = ints.one_body(p, q);
            for s in 0..2 {
                h += &cr[so(p, s)] * &an[so(q, s)] * c(v, 0.0);
            }
        }
    }
    for p in 0..ns {
        for q in 0..ns {
            for r in 0..ns {
                for s in 0..ns {
                    let v = ints.two_body(p, q, r, s);
                    if v == 0.0 {
                        continue;
                    }
                    for sig in 0..2 {
                        for tau in 0..2 {
                            h += &cr[so(p, sig)]
                                * &cr[so(r, tau)]
                                * &an[so(s, tau)]
                                * &an[so(q, sig)]
                                * c(0.5 * v, 0.0);
                        }
                    }
                }
            }
        }
    }
    h
}

// ---------- Slater–Condon full CI ----------

/// Antisymmetrized `<pq||rs>` over spin-orbitals (interleaved, spin = index % 2).
fn anti(ints: &MolecularIntegrals, p: usize, q: usize, r: usize, s: usize) -> f64 {
    let sp = |k: usize| k % 2;
    let sx = |k: usize| k / 2;
    let mut v = 0.0;
    if sp(p) == sp(r) && sp(q) == sp(s) {
        v += ints.two_body(sx(p), sx(r), sx(q), sx(s));
    }
    if sp(p) == sp(s) && sp(q) == sp(r) {
        v -= ints.two_body(sx(p), sx(s), sx(q), sx(r));
    }
    v
}

fn one(ints: &MolecularIntegrals, p: usize, q: usize) -> f64 {
    if p % 2 == q % 2 {
        ints.one_body(p / 2, q / 2)
    } else {
        0.0
    }
}

/// Sign of moving the orbital at sorted position `from` to where `to` sorts.
fn excitation_sign(occ: &[usize], removed: usize, added: usize) -> f64 {
    // a†_added a_removed |D>, with |D> = a†_{occ[0]} a†_{occ[1]} ... |0>
    let pos = occ.iter().position(|&o| o == removed).unwrap();
    let mut sign = if pos % 2 == 0 { 1.0 } else { -1.0 };
    let rest: Vec<usize> = occ.iter().copied().filter(|&o| o != removed).collect();
    let ahead = rest.iter().filter(|&&o| o < added).count();
    if ahead % 2 == 1 {
        sign = -sign;
    }
    sign
}

fn sc_element(ints: &MolecularIntegrals, a: &[usize], b: &[usize]) -> f64 {
    let only_a: Vec<usize> = a.iter().copied().filter(|o| !b.contains(o)).collect();
    let only_b: Vec<usize> = b.iter().copied().filter(|o| !a.contains(o)).collect();
    match only_a.len() {
        0 => {
            let mut e = ints.core_energy();
            for &m in a {
                e += one(ints, m, m);
            }
            for &m in a {
                for &n in a {
                    e += 0.5 * anti(ints, m, n, m, n);
                }
            }
            e
        }
        1 => {
            let (m, p) = (only_b[0], only_a[0]);
            // <a| H |b> with a = a†_p a_m b
            let sign = excitation_sign(b, m, p);
            let mut v = one(ints, p, m);
            for &n in b {
                if n != m {
                    v += anti(ints, p, n, m, n);
                }
            }
            sign * v
        }
        2 => {
            let (m, n) = (only_b[0], only_b[1]);
            let (p, q) = (only_a[0], only_a[1]);
            let s1 = excitation_sign(b, m, p);
            let mid: Vec<usize> = {
                let mut v: Vec<usize> = b.iter().copied().filter(|&o| o != m).collect();
                v.push(p);
                v.sort();
                v
            };
            let s2 = excitation_sign(&mid, n, q);
            s1 * s2 * anti(ints, p, q, m, n)
        }
        _ => 0.0,
    }
}

/// Lowest eigenvalue over all determinants with the integrals' electron count and spin.
pub fn slater_condon_ground(ints: &MolecularIntegrals) -> f64 {
    let n = 2 * ints.n_spatial();
    let dets: Vec<Vec<usize>> = (0u64..1 << n)
        .filter(|b| b.count_ones() as usize == ints.n_electrons())
        .filter(|b| {
            let up = (0..n).filter(|k| k % 2 == 0 && b >> k & 1 == 1).count() as i64;
            let down = ints.n_electrons() as i64 - up;
            up - down == ints.ms2()
        })
        .map(|b| (0..n).filter(|k| b >> k & 1 == 1).collect())
        .collect();
    let d = dets.len();
    let mut h = DMatrix::<f64>::zeros(d, d);
    for i in 0..d {
        for j in 0..d {
            h[(i, j)] = sc_element(ints, &dets[i], &dets[j]);
        }
    }
    h.symmetric_eigen()
        .eigenvalues
        .iter()
        .copied()
        .fold(f64::INFINITY, f64::min)
}

// ---------- classical brute force ----------

pub fn brute_force_sat(formula: &qaoa_lab::problems::SatFormula) -> Vec<u64> {
    (0u64..1 << formula.n_vars())
        .filter(|&x| {
            formula.clauses().iter().all(|clause| {
                clause.iter().any(|l| {
                    let bit = (x >> l.var) & 1 == 1;
                    if l.negated {
                        !bit
                    } else {
                        bit
                    }
                })
            })
        })
        .collect()
}

pub fn log_log_slope(points: &[(f64, f64)]) -> f64 {
    let pts: Vec<(f64, f64)> = points.iter().map(|(x, y)| (x.ln(), y.ln())).collect();
    let n = pts.len() as f64;
    let mx = pts.iter().map(|p| p.0).sum::<f64>() / n;
    let my = pts.iter().map(|p| p.1).sum::<f64>() / n;
    let sxy: f64 = pts.iter().map(|p| (p.0 - mx) * (p.1 - my)).sum();
    let sxx: f64 = pts.iter().map(|p| (p.0 - mx).powi(2)).sum();
    sxy / sxx
}
