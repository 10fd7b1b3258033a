//! Acceptance suite. Runs as a plain binary and prints one PASS/FAIL line per criterion.

mod common;

use std::panic::{catch_unwind, AssertUnwindSafe};
use std::time::{Duration, Instant};

use common::*;
use rand::Rng;

use qaoa_lab::basis::{SpinOrdering, SymmetrySector};
use qaoa_lab::hamcore::{
    jordan_wigner, jw_ladder, number_operator, sz_operator, DiagonalOperator, Ladder, PauliSum,
};
use qaoa_lab::problems::{
    build_chemistry_problem, initial_state, random_3sat, sat_cost, xy_mixer, ChemistryMixer,
    CostOperator, InitialKind, MixerSpec, ProblemInstance,
};
use qaoa_lab::qaoa::{
    qaoa_evolve, schedule_angles, squared_overlap, EvolveOptions, Evolver, Schedule, ScheduleKind,
    Warp,
};
use qaoa_lab::simkernel::{
    apply_diagonal_phase, apply_pauli_sum, apply_x_mixer, expm_krylov, ManifoldStates, Propagation,
};
use qaoa_lab::sweep::{
    delta_crit, run_sweep, step_unitary_eigenphases, to_csv, DeltaCrit, DeltaCritRule, GridSpec,
    PhaseDiagram, SweepOptions,
};

struct Outcome {
    pass: bool,
    detail: String,
}

fn outcome(pass: bool, detail: impl Into<String>) -> Outcome {
    Outcome {
        pass,
        detail: detail.into(),
    }
}

fn overlap_at(inst: &ProblemInstance, kind: ScheduleKind, delta: f64, p: usize) -> f64 {
    let g = inst.ground_manifold().unwrap();
    let run = qaoa_evolve(inst, &Schedule::new(kind, delta, p).unwrap()).unwrap();
    squared_overlap(&run.state, &g).unwrap()
}

fn sweep(inst: &ProblemInstance, grid: &GridSpec, threads: Option<usize>) -> PhaseDiagram {
    run_sweep(
        inst,
        grid,
        SweepOptions {
            threads,
            ..Default::default()
        },
    )
    .unwrap()
}

fn sat_instance(
    n: usize,
    m: usize,
    seed: u64,
) -> (qaoa_lab::problems::SatFormula, ProblemInstance) {
    let f = random_3sat(n, m, seed).unwrap();
    let inst = ProblemInstance::new(
        format!("sat(n={n},m={m},seed={seed})"),
        CostOperator::Diagonal(sat_cost(&f).unwrap()),
        MixerSpec::TransverseX,
        initial_state(InitialKind::Uniform, n).unwrap(),
        None,
    )
    .unwrap();
    (f, inst)
}

fn criterion_1() -> Outcome {
    let start = Instant::now();
    let mut r = rng(1001);
    let mut worst = 0.0f64;
    let mut checks = 0;
    for i in 0..200 {
        let n = 1 + i % 6;
        let v = random_state(&mut r, n);
        let terms = 1 + r.random_range(0..12);
        let err = match i % 4 {
            0 => {
                let h = random_complex_sum(&mut r, n, terms);
                max_diff(
                    apply_pauli_sum(&h, &v).unwrap().amplitudes(),
                    &matvec(&kron_sum(&h), v.amplitudes()),
                )
            }
            1 => {
                let h = random_hermitian(&mut r, n, terms);
                let t = r.random_range(-4.0..4.0);
                let got = expm_krylov(&h, t, &v, 30, 1e-12).unwrap();
                max_diff(
                    got.amplitudes(),
                    &dense_evolve(&kron_sum(&h), t, v.amplitudes()),
                )
            }
            2 => {
                let letters: Vec<String> = (0..n)
                    .map(|k| (0..n).map(|j| if j == k { 'X' } else { 'I' }).collect())
                    .collect();
                let sum_x = PauliSum::from_letters(letters.iter().map(|s| (1.0, s))).unwrap();
                let t = r.random_range(-4.0..4.0);
                max_diff(
                    apply_x_mixer(t, &v).unwrap().amplitudes(),
                    &dense_evolve(&kron_sum(&sum_x), t, v.amplitudes()),
                )
            }
            _ => {
                let values: Vec<f64> = (0..1 << n).map(|_| r.random_range(-3.0..3.0)).collect();
                let d = DiagonalOperator::new(n, values.clone()).unwrap();
                let mut m = CMat::zeros(1 << n, 1 << n);
                for (k, x) in values.iter().enumerate() {
                    m[(k, k)] = c(*x, 0.0);
                }
                let t = r.random_range(-4.0..4.0);
                max_diff(
                    apply_diagonal_phase(&d, t, &v).unwrap().amplitudes(),
                    &dense_evolve(&m, t, v.amplitudes()),
                )
            }
        };
        worst = worst.max(err);
        checks += 1;
    }
    let elapsed = start.elapsed();
    outcome(
        worst < 1e-10 && elapsed < Duration::from_secs(60),
        format!(
            "{checks} checks, max error {worst:.2e}, {:.1}s",
            elapsed.as_secs_f64()
        ),
    )
}

fn criterion_2() -> Outcome {
    let n = 6;
    let dim = 1 << n;
    let ops: Vec<(CMat, CMat)> = (0..n)
        .map(|k| {
            (
                kron_sum(&jw_ladder(k, n, Ladder::Create).unwrap()),
                kron_sum(&jw_ladder(k, n, Ladder::Annihilate).unwrap()),
            )
        })
        .collect();
    let entry_max = |m: CMat| m.iter().map(|x| x.norm()).fold(0.0, f64::max);
    let mut anti = 0.0f64;
    for i in 0..n {
        for j in 0..n {
            let (ci, ai) = &ops[i];
            let (cj, aj) = &ops[j];
            let delta = if i == j {
                CMat::identity(dim, dim)
            } else {
                CMat::zeros(dim, dim)
            };
            anti = anti.max(entry_max(ai * cj + cj * ai - delta));
            anti = anti.max(entry_max(ai * aj + aj * ai));
            anti = anti.max(entry_max(ci * cj + cj * ci));
        }
    }

    let mut comm = 0.0f64;
    let mut r = rng(2002);
    let mut molecules = vec![h2_integrals()];
    molecules.push(random_integrals(&mut r, 3, 2, 0));
    molecules.push(random_integrals(&mut r, 3, 3, 1));
    molecules.push(random_integrals(&mut r, 2, 2, 0));
    for ints in &molecules {
        let q = 2 * ints.n_spatial();
        for ordering in [SpinOrdering::Interleaved, SpinOrdering::Blocked] {
            let h = kron_sum(&jordan_wigner(ints, ordering).unwrap());
            let num = kron_sum(&number_operator(q).unwrap());
            let sz = kron_sum(&sz_operator(q, ordering).unwrap());
            comm = comm.max(entry_max(&h * &num - &num * &h));
            comm = comm.max(entry_max(&h * &sz - &sz * &h));
        }
    }

    let e_sc = slater_condon_ground(&h2_integrals());
    let e = h2_instance().ground_manifold().unwrap().energy;
    let de = (e - e_sc).abs();
    outcome(
        anti < 1e-10 && comm < 1e-10 && de < 1e-8,
        format!(
            "anticommutator {anti:.1e}, number/Sz commutator {comm:.1e}, H2 E0 {e:.10} vs full CI {e_sc:.10} (|diff| {de:.1e})"
        ),
    )
}

fn criterion_3() -> Outcome {
    let start = Instant::now();
    let inst = h2_instance();
    let o100 = overlap_at(&inst, ScheduleKind::Linear, 0.1, 100);
    let o10 = overlap_at(&inst, ScheduleKind::Linear, 0.1, 10);
    let deltas: Vec<f64> = (0..=28).map(|k| 0.02 + 0.01 * k as f64).collect();
    let series: Vec<f64> = deltas
        .iter()
        .map(|&d| overlap_at(&inst, ScheduleKind::Linear, d, 100))
        .collect();
    let mut worst_drop = 0.0f64;
    for i in 0..series.len() {
        for j in i + 1..series.len() {
            worst_drop = worst_drop.max(series[i] - series[j]);
        }
    }
    let elapsed = start.elapsed();
    outcome(
        o100 > 0.99 && o100 > o10 && worst_drop <= 0.01 && elapsed < Duration::from_secs(300),
        format!(
            "overlap(0.1,100) {o100:.6}, overlap(0.1,10) {o10:.6}, largest decrease over Δ∈[0.02,0.3] at p=100 {worst_drop:.2e}, {:.1}s",
            elapsed.as_secs_f64()
        ),
    )
}

fn criterion_4() -> Outcome {
    let inst = h2_instance();
    let t = 20.0;
    let ev = Evolver::new(&inst).unwrap();
    let reference = ev.continuous(t, 40_000, Propagation::Dense).unwrap();
    let check = ev.continuous(t, 80_000, Propagation::Dense).unwrap();
    let self_err = reference.distance(&check).unwrap();
    let mut points = Vec::new();
    for p in [25usize, 50, 100, 200] {
        let delta = t / (p + 1) as f64;
        let run = ev
            .evolve(&Schedule::new(ScheduleKind::Linear, delta, p).unwrap())
            .unwrap();
        points.push((1.0 / p as f64, run.state.distance(&reference).unwrap()));
    }
    let slope = log_log_slope(&points);
    let listing: Vec<String> = points
        .iter()
        .map(|(x, d)| format!("p={:.0}: {d:.4e}", 1.0 / x))
        .collect();
    outcome(
        (0.8..=1.3).contains(&slope),
        format!(
            "4 qubits (H2, full register), T=20, slope {slope:.3} [{}], reference self-consistency {self_err:.1e}",
            listing.join(", ")
        ),
    )
}

fn min_gap(inst: &ProblemInstance) -> f64 {
    let n = inst.n_qubits();
    let letters: Vec<String> = (0..n)
        .map(|k| (0..n).map(|j| if j == k { 'X' } else { 'I' }).collect())
        .collect();
    let hb = kron_sum(&PauliSum::from_letters(letters.iter().map(|s| (-1.0, s))).unwrap());
    let mut hc = CMat::zeros(1 << n, 1 << n);
    if let CostOperator::Diagonal(d) = inst.cost() {
        for (k, v) in d.values().iter().enumerate() {
            hc[(k, k)] = c(*v, 0.0);
        }
    }
    (0..=1000)
        .map(|k| {
            let s = k as f64 / 1000.0;
            let h = &hb * c(1.0 - s, 0.0) + &hc * c(s, 0.0);
            let mut e: Vec<f64> = h.symmetric_eigen().eigenvalues.iter().copied().collect();
            e.sort_by(f64::total_cmp);
            e[1] - e[0]
        })
        .fold(f64::INFINITY, f64::min)
}

fn criterion_5() -> Outcome {
    let inst = ising_x_instance(4, 0);
    let gap = min_gap(&inst);
    let g = inst.ground_manifold().unwrap();
    let initial = squared_overlap(inst.initial_state(), &g).unwrap();
    let o_small = overlap_at(&inst, ScheduleKind::Linear, 0.3, 400);

    let grid = GridSpec::default_grid(ScheduleKind::Linear, inst.label());
    let column = GridSpec::new(
        grid.delta_values().to_vec(),
        vec![400],
        ScheduleKind::Linear,
        inst.label(),
    )
    .unwrap();
    let pd = sweep(&inst, &column, None);
    let crit = delta_crit(&pd, DeltaCritRule::FirstDropBelowInitial)[0];
    let Some(dc) = crit.value() else {
        return outcome(false, format!("no finite Δ_crit at p=400 ({crit:?})"));
    };
    let i_large = pd.delta_index(dc).unwrap() + 1;
    let d_large = grid.delta_values()[i_large];
    let o_large = pd.get(i_large, 0).unwrap();

    let f_grid: Vec<f64> = (0..=400).map(|k| k as f64 / 400.0).collect();
    let warp = Warp::new(ScheduleKind::Linear, 0.37).unwrap();
    let wraps_small = step_unitary_eigenphases(&inst, 0.3, &f_grid, warp)
        .unwrap()
        .wrap_events
        .len();
    let wraps_large = step_unitary_eigenphases(&inst, d_large, &f_grid, warp)
        .unwrap()
        .wrap_events
        .len();
    outcome(
        o_small > 0.99 && o_large < initial && wraps_large >= 1 && wraps_small == 0,
        format!(
            "{} (min gap {gap:.3}): overlap(0.3,400) {o_small:.5}; Δ_crit(400) {dc:.4}; overlap({d_large:.4},400) {o_large:.2e} vs initial {initial:.4}; wraps {wraps_large} at Δ={d_large:.4}, {wraps_small} at Δ=0.3",
            inst.label()
        ),
    )
}

fn direct_overlap(state: &qaoa_lab::simkernel::StateVector, ground: &[u64]) -> f64 {
    ground
        .iter()
        .map(|&x| state.amplitude_of(x).norm_sqr())
        .sum()
}

fn check_diagram(inst: &ProblemInstance, brute: &[u64], kind: ScheduleKind) -> (bool, String) {
    let start = Instant::now();
    let grid = GridSpec::default_grid(kind, inst.label());
    let pd = sweep(inst, &grid, None);
    let complete = pd.failures.is_empty() && pd.overlaps.iter().flatten().all(Option::is_some);

    let g = inst.ground_manifold().unwrap();
    let mut manifold: Vec<u64> = match &g.states {
        ManifoldStates::Indicators { states, .. } => states.clone(),
        ManifoldStates::Vectors(_) => Vec::new(),
    };
    manifold.sort();
    let same_manifold = manifold == brute;

    let mut metric_err = (squared_overlap(inst.initial_state(), &g).unwrap()
        - direct_overlap(inst.initial_state(), brute))
    .abs();
    let mut r = rng(6006);
    for _ in 0..40 {
        let i = r.random_range(0..grid.delta_values().len());
        let j = r.random_range(0..grid.p_values().len());
        let s = Schedule::new(kind, grid.delta_values()[i], grid.p_values()[j]).unwrap();
        let state = qaoa_evolve(inst, &s).unwrap().state;
        metric_err = metric_err.max((pd.get(i, j).unwrap() - direct_overlap(&state, brute)).abs());
        metric_err = metric_err
            .max((squared_overlap(&state, &g).unwrap() - direct_overlap(&state, brute)).abs());
    }

    let crits = delta_crit(&pd, DeltaCritRule::FirstDropBelowInitial);
    let mut shape_ok = true;
    let mut crit_range = (f64::INFINITY, 0.0f64);
    for (j, &p) in grid.p_values().iter().enumerate() {
        if p < 20 {
            continue;
        }
        let DeltaCrit::At(dc) = crits[j] else {
            shape_ok = false;
            continue;
        };
        crit_range = (crit_range.0.min(dc), crit_range.1.max(dc));
        let colored = grid
            .delta_values()
            .iter()
            .enumerate()
            .any(|(i, &d)| d <= dc && pd.get(i, j).unwrap() > pd.initial_overlap);
        shape_ok &= colored;
    }
    let best = pd
        .overlaps
        .iter()
        .flatten()
        .flatten()
        .copied()
        .fold(0.0, f64::max);
    let ok = complete && same_manifold && metric_err < 1e-12 && shape_ok;
    (
        ok,
        format!(
            "{}: degeneracy {}, initial {:.3e}, best cell {best:.4}, Δ_crit(p≥20) in [{:.3}, {:.3}], metric error {metric_err:.1e}, {:.1}s",
            inst.label(),
            brute.len(),
            pd.initial_overlap,
            crit_range.0,
            crit_range.1,
            start.elapsed().as_secs_f64()
        ),
    )
}

fn criterion_6() -> Outcome {
    let start = Instant::now();
    let (formula, sat) = sat_instance(12, 48, 0);
    let sat_brute = brute_force_sat(&formula);
    let (ok_sat, msg_sat) = check_diagram(&sat, &sat_brute, ScheduleKind::Linear);

    let ising = ising_x_instance(6, 0);
    let CostOperator::Diagonal(d) = ising.cost() else {
        unreachable!()
    };
    let min = d.values().iter().copied().fold(f64::INFINITY, f64::min);
    let ising_brute: Vec<u64> = (0u64..64)
        .filter(|&x| d.values()[x as usize] - min <= 1e-8)
        .collect();
    let (ok_ising, msg_ising) = check_diagram(&ising, &ising_brute, ScheduleKind::Linear);

    let elapsed = start.elapsed();
    outcome(
        ok_sat && ok_ising && elapsed < Duration::from_secs(900) && !sat_brute.is_empty(),
        format!(
            "{msg_sat}; {msg_ising}; total {:.1}s",
            elapsed.as_secs_f64()
        ),
    )
}

fn first_p_reaching(inst: &ProblemInstance, kind: ScheduleKind, target: f64) -> Option<usize> {
    let g = inst.ground_manifold().unwrap();
    (1..=100).find(|&p| {
        let run = qaoa_evolve(inst, &Schedule::new(kind, 0.1, p).unwrap()).unwrap();
        squared_overlap(&run.state, &g).unwrap() >= target
    })
}

fn criterion_7() -> Outcome {
    let mut r = rng(7007);
    let kinds = [
        ScheduleKind::Linear,
        ScheduleKind::Root,
        ScheduleKind::Tangent,
    ];
    let mut worst = 0.0f64;
    for i in 0..1000 {
        let kind = kinds[i % 3];
        let delta = r.random_range(1e-3..10.0);
        let p = r.random_range(1..300);
        let a = schedule_angles(&Schedule::new(kind, delta, p).unwrap());
        for (g, b) in a.gammas.iter().zip(&a.betas) {
            worst = worst.max((g + b - delta).abs() / delta);
        }
    }
    let w = Warp::new(ScheduleKind::Tangent, 0.37).unwrap();
    let ends = w.eval(0.0).abs().max((w.eval(1.0) - 1.0).abs());
    let hard = worst <= 4.0 * f64::EPSILON && ends <= 1e-12;

    let inst = h2_instance();
    let show = |p: Option<usize>| p.map_or("none ≤ 100".to_string(), |p| p.to_string());
    let lin = first_p_reaching(&inst, ScheduleKind::Linear, 0.99);
    let root = first_p_reaching(&inst, ScheduleKind::Root, 0.99);
    let tan = first_p_reaching(&inst, ScheduleKind::Tangent, 0.99);
    let larger = |q: Option<usize>| match (q, lin) {
        (None, Some(_)) => true,
        (Some(q), Some(l)) => q > l,
        _ => false,
    };
    let soft = larger(root) && larger(tan);
    outcome(
        hard,
        format!(
            "max |γ+β-Δ|/Δ {worst:.1e} over 1000 schedules, tangent endpoint error {ends:.1e}; soft assertion {}: first p reaching 0.99 at Δ=0.1 is linear {}, root {}, tangent {}",
            if soft { "met" } else { "NOT met" },
            show(lin),
            show(root),
            show(tan)
        ),
    )
}

fn criterion_8() -> Outcome {
    let mut drift = 0.0f64;
    let mut protocols = 0;
    let krylov = EvolveOptions {
        dense: false,
        ..Default::default()
    };
    let sector = EvolveOptions {
        sector_mode: true,
        ..Default::default()
    };

    let h2 = h2_instance();
    let mut r = rng(8008);
    let mol = build_chemistry_problem(
        &random_integrals(&mut r, 4, 4, 0),
        ChemistryMixer::DiagOfHe,
        SpinOrdering::Interleaved,
    )
    .unwrap();
    let (_, sat) = sat_instance(10, 40, 3);
    let ising = ising_x_instance(6, 0);

    let mut chem_leak = 0.0f64;
    for inst in [&h2, &mol] {
        let s = inst.symmetry_sector().copied().unwrap();
        let n = inst.n_qubits();
        for opts in [EvolveOptions::default(), krylov, sector] {
            let ev = Evolver::with_options(inst, opts).unwrap();
            for (kind, delta) in [
                (ScheduleKind::Linear, 0.2),
                (ScheduleKind::Tangent, 1.5),
                (ScheduleKind::Root, 5.0),
            ] {
                let run = ev
                    .evolve(&Schedule::new(kind, delta, 200).unwrap())
                    .unwrap();
                drift = drift.max((run.state.norm() - 1.0).abs());
                chem_leak = chem_leak.max(run.state.leakage(|b| s.contains(b, n)));
                protocols += 1;
            }
        }
    }

    for inst in [&sat, &ising] {
        for opts in [EvolveOptions::default(), krylov] {
            let ev = Evolver::with_options(inst, opts).unwrap();
            for delta in [0.1, 1.0, 4.0] {
                let run = ev
                    .evolve(&Schedule::new(ScheduleKind::Linear, delta, 200).unwrap())
                    .unwrap();
                drift = drift.max((run.state.norm() - 1.0).abs());
                protocols += 1;
            }
        }
    }

    let n = 8;
    let (_, base) = sat_instance(n, 30, 5);
    let mut xy_leak = 0.0f64;
    for k in 1..n {
        let inst = ProblemInstance::new(
            format!("xy-dicke-{k}"),
            base.cost().clone(),
            MixerSpec::Xy(xy_mixer(n).unwrap()),
            initial_state(InitialKind::Dicke(k), n).unwrap(),
            Some(SymmetrySector::particles(k)),
        )
        .unwrap();
        for opts in [EvolveOptions::default(), krylov] {
            let ev = Evolver::with_options(&inst, opts).unwrap();
            for delta in [0.3, 2.0] {
                let run = ev
                    .evolve(&Schedule::new(ScheduleKind::Linear, delta, 200).unwrap())
                    .unwrap();
                drift = drift.max((run.state.norm() - 1.0).abs());
                xy_leak = xy_leak.max(run.state.leakage(|b| b.count_ones() as usize == k));
                protocols += 1;
            }
        }
    }
    outcome(
        drift < 1e-7 && chem_leak < 1e-10 && xy_leak < 1e-12,
        format!(
            "{protocols} protocols of 200 steps: norm drift {drift:.1e}, chemistry sector leakage {chem_leak:.1e}, XY Hamming-weight leakage {xy_leak:.1e}"
        ),
    )
}

fn criterion_9() -> Outcome {
    let mut details = Vec::new();
    let mut ok = true;
    for inst in [h2_instance(), ising_x_instance(6, 1)] {
        let grid = GridSpec::default_grid(ScheduleKind::Linear, inst.label());
        let reference = to_csv(&sweep(&inst, &grid, Some(1)));
        let mut same = to_csv(&sweep(&inst, &grid, Some(1))) == reference;
        for threads in [2, 8] {
            same &= to_csv(&sweep(&inst, &grid, Some(threads))) == reference;
        }
        ok &= same;
        details.push(format!(
            "{} ({} bytes) {}",
            inst.label(),
            reference.len(),
            if same { "identical" } else { "differs" }
        ));
    }
    outcome(
        ok,
        format!("default grid at 1, 1, 2, 8 threads: {}", details.join(", ")),
    )
}

fn main() {
    let criteria: [(&str, fn() -> Outcome); 9] = [
        ("oracle equivalence", criterion_1),
        ("Jordan-Wigner correctness", criterion_2),
        ("continuous adiabatic limit", criterion_3),
        ("Trotter order", criterion_4),
        ("discrete adiabatic limit", criterion_5),
        ("combinatorial phase diagrams", criterion_6),
        ("schedule algebra", criterion_7),
        ("conservation", criterion_8),
        ("determinism", criterion_9),
    ];
    let mut failed = 0;
    for (k, (name, f)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let result = catch_unwind(AssertUnwindSafe(f)).unwrap_or_else(|e| {
            let msg = e
                .downcast_ref::<String>()
                .cloned()
                .or_else(|| e.downcast_ref::<&str>().map(|s| s.to_string()))
                .unwrap_or_default();
            outcome(false, format!("panicked: {msg}"))
        });
        if !result.pass {
            failed += 1;
        }
        println!(
            "criterion {} {} [{name}] {} ({:.1}s)",
            k + 1,
            if result.pass { "PASS" } else { "FAIL" },
            result.detail,
            start.elapsed().as_secs_f64()
        );
    }
    println!(
        "acceptance: {} passed, {failed} failed",
        criteria.len() - failed
    );
    if failed > 0 {
        std::process::exit(1);
    }
}
