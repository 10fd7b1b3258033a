//! Benchmark fixtures shared by the criterion benches.

use qaoa_lab::hamcore::{PauliString, PauliSum};
use qaoa_lab::problems::{
    initial_state, random_3sat, sat_cost, CostOperator, InitialKind, MixerSpec, ProblemInstance,
};

/// Deterministic dense-ish Hermitian sum: every 2-local XX, YY, ZZ plus single Z.
pub fn heisenberg_like(n: usize) -> PauliSum {
    let mut terms = Vec::new();
    for i in 0..n {
        terms.push((
            0.3 + 0.01 * i as f64,
            PauliString::new(n, 0, 1 << i).unwrap(),
        ));
        for j in i + 1..n {
            let m = (1u64 << i) | (1u64 << j);
            let w = 1.0 / (1 + j - i) as f64;
            terms.push((w, PauliString::new(n, m, 0).unwrap()));
            terms.push((w, PauliString::new(n, m, m).unwrap()));
            terms.push((0.5 * w, PauliString::new(n, 0, m).unwrap()));
        }
    }
    PauliSum::from_terms(n, terms.into_iter().map(|(c, s)| (c.into(), s))).unwrap()
}

pub fn sat_instance(n: usize, m: usize, seed: u64) -> ProblemInstance {
    let f = random_3sat(n, m, seed).unwrap();
    ProblemInstance::new(
        "bench-sat",
        CostOperator::Diagonal(sat_cost(&f).unwrap()),
        MixerSpec::TransverseX,
        initial_state(InitialKind::Uniform, n).unwrap(),
        None,
    )
    .unwrap()
}
