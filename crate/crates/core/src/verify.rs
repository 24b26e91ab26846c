//! Self-verification suites behind the `verify` CLI command.
//!
//! Every check re-derives a cross-module identity through an independent
//! route (naive reference algorithms, explicit state synthesis, closed
//! forms) and reports the measured error next to its tolerance. The `Quick`
//! level keeps register sizes small enough to finish in well under a minute;
//! `Full` pushes the same suites up to ten qubits.

use rand_chacha::ChaCha8Rng;
use rand_core::{RngCore, SeedableRng};
use std::f64::consts::{PI, TAU};

use crate::boolean::{
    anf_to_function, anf_to_hypergraph, function_from_solutions, mobius_transform,
    rew_from_function, Anf, BooleanFunction,
};
use crate::entanglement::{
    geometric_measure_bruteforce_seeded, geometric_measure_m1, geometric_measure_m2_seeded,
    overlap_m1, refine_m1_over_alpha_beta,
};
use crate::grover::{optimal_iterations, run_grover, success_probability_closed_form};
use crate::hypergraph::{grover_m1_hypergraph, grover_m2_hypergraph, Hypergraph, Phase};
use crate::state::{SolutionSet, StateVector};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum VerifyLevel {
    Quick,
    Full,
}

/// One verified identity with its measured error.
#[derive(Clone, Debug)]
pub struct CheckOutcome {
    pub name: String,
    pub passed: bool,
    pub max_error: f64,
    pub tolerance: f64,
    pub details: String,
}

impl CheckOutcome {
    fn measured(name: impl Into<String>, max_error: f64, tolerance: f64, details: impl Into<String>) -> Self {
        Self {
            name: name.into(),
            passed: max_error <= tolerance,
            max_error,
            tolerance,
            details: details.into(),
        }
    }

    fn counted(name: impl Into<String>, mismatches: usize, details: impl Into<String>) -> Self {
        Self {
            name: name.into(),
            passed: mismatches == 0,
            max_error: mismatches as f64,
            tolerance: 0.0,
            details: details.into(),
        }
    }
}

struct Caps {
    gates: usize,
    mobius_random: usize,
    mobius_naive: usize,
    bijection: usize,
    hypergraph: usize,
    relabel: usize,
    grover: usize,
    bruteforce: usize,
    lu_trials: usize,
    decay: usize,
    ordering: usize,
    beta_grid: usize,
    beta_n: usize,
}

fn caps(level: VerifyLevel) -> Caps {
    match level {
        VerifyLevel::Quick => Caps {
            gates: 5,
            mobius_random: 8,
            mobius_naive: 5,
            bijection: 5,
            hypergraph: 5,
            relabel: 5,
            grover: 5,
            bruteforce: 4,
            lu_trials: 6,
            decay: 8,
            ordering: 6,
            beta_grid: 500,
            beta_n: 5,
        },
        VerifyLevel::Full => Caps {
            gates: 10,
            mobius_random: 12,
            mobius_naive: 8,
            bijection: 10,
            hypergraph: 10,
            relabel: 8,
            grover: 10,
            bruteforce: 5,
            lu_trials: 10,
            decay: 12,
            ordering: 10,
            beta_grid: 2000,
            beta_n: 6,
        },
    }
}

/// Run every suite at the given level. Random draws derive from `seed`, so
/// the report is reproducible.
pub fn run_checks(level: VerifyLevel, seed: u64) -> Vec<CheckOutcome> {
    let caps = caps(level);
    let mut out = vec![
        gate_norms(caps.gates, seed),
        gate_involutions(caps.gates, seed),
        ckz_commutation(caps.gates, seed),
        mobius_involution(caps.mobius_random, seed),
        mobius_vs_naive(caps.mobius_naive, seed),
        minus_parity(),
        rew_bijection(caps.bijection, seed),
        m1_soundness(caps.hypergraph),
    ];
    out.extend(m2_anf_agreement(caps.hypergraph));
    out.push(d1_factorization(caps.hypergraph));
    out.push(relabeling_closure(caps.relabel, seed));
    out.push(grover_closed_form(caps.grover));
    out.push(restricted_vs_bruteforce(caps.bruteforce, seed));
    out.push(lu_invariance(caps.bruteforce, caps.lu_trials, seed));
    out.push(m1_decay(caps.decay));
    out.push(m2_distance_ordering(caps.ordering, seed));
    out.push(beta_zero_optimality(caps.beta_n, caps.beta_grid));
    out.push(optimizer_determinism(seed));
    out
}

fn rng_for(seed: u64, salt: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed ^ salt.wrapping_mul(0x9E3779B97F4A7C15))
}

fn random_solutions(rng: &mut ChaCha8Rng, n: usize, count: usize) -> SolutionSet {
    let dim = 1usize << n;
    let sols: Vec<usize> = (0..count.max(1))
        .map(|_| (rng.next_u64() as usize) % dim)
        .collect();
    SolutionSet::new(n, sols).expect("nonempty in-range solutions")
}

fn random_function(rng: &mut ChaCha8Rng, n: usize) -> BooleanFunction {
    let table = (0..1usize << n).map(|_| rng.next_u64() & 1 == 1).collect();
    BooleanFunction::new(n, table)
}

fn random_permutation(rng: &mut ChaCha8Rng, n: usize) -> Vec<usize> {
    let mut perm: Vec<usize> = (0..n).collect();
    for i in (1..n).rev() {
        let j = (rng.next_u64() as usize) % (i + 1);
        perm.swap(i, j);
    }
    perm
}

fn gate_norms(n_cap: usize, seed: u64) -> CheckOutcome {
    let mut rng = rng_for(seed, 1);
    let mut worst = 0.0f64;
    for n in 1..=n_cap {
        let sols = random_solutions(&mut rng, n, 2);
        let mut state = StateVector::uniform_superposition(n)
            .unwrap()
            .apply_oracle(&sols)
            .unwrap();
        for _ in 0..4 {
            let mask = 1 + (rng.next_u64() as usize) % ((1 << n) - 1);
            state = state.apply_ckz(mask).unwrap();
            state = state.apply_pauli_x((rng.next_u64() as usize) % n).unwrap();
        }
        state = state.permute_qubits(&random_permutation(&mut rng, n)).unwrap();
        worst = worst.max((state.norm_sq() - 1.0).abs());
    }
    CheckOutcome::measured(
        "gate-norm-preservation",
        worst,
        1e-12,
        format!("random gate chains, n <= {n_cap}"),
    )
}

fn gate_involutions(n_cap: usize, seed: u64) -> CheckOutcome {
    let mut rng = rng_for(seed, 2);
    let mut mismatches = 0usize;
    for n in 1..=n_cap {
        let sols = random_solutions(&mut rng, n, 3);
        let state = rew_from_function(&random_function(&mut rng, n)).unwrap();
        let mask = 1 + (rng.next_u64() as usize) % ((1 << n) - 1);
        let qubit = (rng.next_u64() as usize) % n;
        if state.apply_oracle(&sols).unwrap().apply_oracle(&sols).unwrap() != state {
            mismatches += 1;
        }
        if state.apply_ckz(mask).unwrap().apply_ckz(mask).unwrap() != state {
            mismatches += 1;
        }
        if state.apply_pauli_x(qubit).unwrap().apply_pauli_x(qubit).unwrap() != state {
            mismatches += 1;
        }
    }
    CheckOutcome::counted(
        "gate-involutions",
        mismatches,
        format!("oracle/ckz/pauli-x applied twice, bitwise, n <= {n_cap}"),
    )
}

fn ckz_commutation(n_cap: usize, seed: u64) -> CheckOutcome {
    let mut rng = rng_for(seed, 3);
    let mut mismatches = 0usize;
    for n in 1..=n_cap {
        let state = rew_from_function(&random_function(&mut rng, n)).unwrap();
        for _ in 0..6 {
            let a = 1 + (rng.next_u64() as usize) % ((1 << n) - 1);
            let b = 1 + (rng.next_u64() as usize) % ((1 << n) - 1);
            let ab = state.apply_ckz(a).unwrap().apply_ckz(b).unwrap();
            let ba = state.apply_ckz(b).unwrap().apply_ckz(a).unwrap();
            if ab != ba {
                mismatches += 1;
            }
        }
    }
    CheckOutcome::counted(
        "ckz-commutation",
        mismatches,
        format!("random mask pairs, n <= {n_cap}"),
    )
}

fn mobius_involution(random_cap: usize, seed: u64) -> CheckOutcome {
    let mut mismatches = 0usize;
    // Exhaustive at n <= 4.
    for n in 1..=4usize {
        let dim = 1usize << n;
        for code in 0u64..(1 << dim) {
            let table: Vec<bool> = (0..dim).map(|x| code & (1 << x) != 0).collect();
            let f = BooleanFunction::new(n, table);
            if anf_to_function(&mobius_transform(&f)) != f {
                mismatches += 1;
            }
        }
    }
    let mut rng = rng_for(seed, 4);
    for _ in 0..1000 {
        let n = 1 + (rng.next_u64() as usize) % random_cap;
        let f = random_function(&mut rng, n);
        if anf_to_function(&mobius_transform(&f)) != f {
            mismatches += 1;
        }
        let masks: Vec<usize> = (0..(rng.next_u64() as usize % 20))
            .map(|_| (rng.next_u64() as usize) % (1 << n))
            .collect();
        let anf = Anf::new(n, masks);
        if mobius_transform(&anf_to_function(&anf)) != anf {
            mismatches += 1;
        }
    }
    CheckOutcome::counted(
        "mobius-involution",
        mismatches,
        format!("exhaustive n <= 4 plus 1000 random functions, n <= {random_cap}"),
    )
}

fn mobius_naive_reference(f: &BooleanFunction) -> Vec<usize> {
    let dim = 1usize << f.n();
    let mut monomials = Vec::new();
    for s in 0..dim {
        let mut acc = false;
        let mut t = s;
        loop {
            acc ^= f.eval(t);
            if t == 0 {
                break;
            }
            t = (t - 1) & s;
        }
        if acc {
            monomials.push(s);
        }
    }
    monomials
}

fn mobius_vs_naive(n_cap: usize, seed: u64) -> CheckOutcome {
    let mut rng = rng_for(seed, 5);
    let mut mismatches = 0usize;
    for n in 1..=n_cap {
        for _ in 0..8 {
            let f = random_function(&mut rng, n);
            if mobius_transform(&f).monomials() != mobius_naive_reference(&f).as_slice() {
                mismatches += 1;
            }
        }
    }
    CheckOutcome::counted(
        "mobius-butterfly-vs-naive",
        mismatches,
        format!("against the direct subset-sum definition, n <= {n_cap}"),
    )
}

fn minus_parity() -> CheckOutcome {
    let mut mismatches = 0usize;
    for n in 1..=4usize {
        let dim = 1usize << n;
        let full = dim - 1;
        for code in 0u64..(1 << dim) {
            let table: Vec<bool> = (0..dim).map(|x| code & (1 << x) != 0).collect();
            let f = BooleanFunction::new(n, table);
            let even_minuses = f.weight().is_multiple_of(2);
            let has_full = mobius_transform(&f).monomials().contains(&full);
            if even_minuses != !has_full {
                mismatches += 1;
            }
        }
    }
    CheckOutcome::counted(
        "minus-parity-vs-full-monomial",
        mismatches,
        "even minus count iff order-n monomial absent, exhaustive n <= 4",
    )
}

fn rew_bijection(n_cap: usize, seed: u64) -> CheckOutcome {
    let mut rng = rng_for(seed, 6);
    let mut worst = 0.0f64;
    for n in 1..=n_cap {
        for _ in 0..8 {
            let f = random_function(&mut rng, n);
            let direct = rew_from_function(&f).unwrap();
            let via_hypergraph = anf_to_hypergraph(&mobius_transform(&f)).state_vector();
            worst = worst.max(direct.max_abs_diff(&via_hypergraph).unwrap());
        }
    }
    CheckOutcome::measured(
        "rew-hypergraph-bijection",
        worst,
        1e-12,
        format!("random functions through the Möbius pipeline, n <= {n_cap}"),
    )
}

fn m1_soundness(n_cap: usize) -> CheckOutcome {
    let mut worst = 0.0f64;
    for n in 1..=n_cap {
        let h = grover_m1_hypergraph(n).unwrap();
        let expect = StateVector::uniform_superposition(n)
            .unwrap()
            .apply_oracle(&SolutionSet::canonical_m1(n).unwrap())
            .unwrap();
        worst = worst.max(h.state_vector().max_abs_diff(&expect).unwrap());
    }
    CheckOutcome::measured(
        "grover-m1-hypergraph-soundness",
        worst,
        1e-12,
        format!("single order-n edge vs oracle state, n <= {n_cap}"),
    )
}

/// Closed-form M=2 edge family: G ∪ S for every proper subset S of the
/// first d vertices, with G the last n−d vertices; the empty union becomes
/// the global −1 phase. Kept separate from the production route.
fn closed_form_m2(n: usize, d: usize) -> (Vec<usize>, Phase) {
    let g = (1usize << (n - d)) - 1;
    let first_d = ((1usize << d) - 1) << (n - d);
    let mut edges = Vec::new();
    let mut phase = Phase::Plus;
    let mut s = first_d;
    loop {
        s = (s.wrapping_sub(1)) & first_d;
        let edge = g | s;
        if edge == 0 {
            phase = Phase::Minus;
        } else {
            edges.push(edge);
        }
        if s == 0 {
            break;
        }
    }
    (edges, phase)
}

fn m2_anf_agreement(n_cap: usize) -> Vec<CheckOutcome> {
    let mut out = Vec::new();
    for n in 2..=n_cap {
        for d in 1..=n {
            let h = grover_m2_hypergraph(n, d).unwrap();
            let sols = SolutionSet::canonical_m2(n, d).unwrap();

            let anf = mobius_transform(&function_from_solutions(&sols));
            let anf_route = anf_to_hypergraph(&anf);
            let (edges, phase) = closed_form_m2(n, d);
            let closed = Hypergraph::new(n, edges, phase).unwrap();

            let expect = StateVector::uniform_superposition(n)
                .unwrap()
                .apply_oracle(&sols)
                .unwrap();
            let state_err = h.state_vector().max_abs_diff(&expect).unwrap();
            let full_mask = (1usize << n) - 1;
            let structural_ok =
                h == anf_route && h == closed && !h.edge_masks().contains(&full_mask);

            out.push(CheckOutcome {
                name: format!("grover-m2-anf-agreement(n={n},d={d})"),
                passed: structural_ok && state_err <= 1e-12,
                max_error: state_err,
                tolerance: 1e-12,
                details: format!(
                    "{} edges, phase {}, closed form {}",
                    h.edge_masks().len(),
                    h.phase().to_i8(),
                    if h == closed { "agrees" } else { "DISAGREES" }
                ),
            });
        }
    }
    out
}

fn d1_factorization(n_cap: usize) -> CheckOutcome {
    let mut worst = 0.0f64;
    for n in 2..=n_cap {
        let h = grover_m2_hypergraph(n, 1).unwrap();
        let plus = StateVector::uniform_superposition(1).unwrap();
        let rest = StateVector::uniform_superposition(n - 1)
            .unwrap()
            .apply_oracle(&SolutionSet::canonical_m1(n - 1).unwrap())
            .unwrap();
        let product = plus.tensor(&rest).unwrap();
        worst = worst.max(h.state_vector().max_abs_diff(&product).unwrap());
    }
    CheckOutcome::measured(
        "d1-biseparable-factorization",
        worst,
        1e-12,
        format!("d=1 state equals ∣+⟩ ⊗ (M=1 state on n−1 qubits), n <= {n_cap}"),
    )
}

fn relabeling_closure(n_cap: usize, seed: u64) -> CheckOutcome {
    let mut rng = rng_for(seed, 7);
    let mut worst = 0.0f64;
    for n in 2..=n_cap {
        for d in 1..=n {
            let h = grover_m2_hypergraph(n, d).unwrap();
            let perm = random_permutation(&mut rng, n);
            let lhs = h.permute_vertices(&perm).unwrap().state_vector();
            let rhs = h.state_vector().permute_qubits(&perm).unwrap();
            worst = worst.max(lhs.max_abs_diff(&rhs).unwrap());
        }
    }
    CheckOutcome::measured(
        "vertex-relabeling-closure",
        worst,
        1e-12,
        format!("permute-then-synthesize vs synthesize-then-permute, n <= {n_cap}"),
    )
}

fn grover_closed_form(n_cap: usize) -> CheckOutcome {
    let mut worst = 0.0f64;
    for n in 2..=n_cap {
        for m in [1usize, 2, 4] {
            if m >= 1 << n {
                continue;
            }
            let sols = SolutionSet::new(n, (0..m).collect()).unwrap();
            let k_max = optimal_iterations(n, m);
            let trace = run_grover(n, &sols, k_max, false).unwrap();
            for step in &trace.steps {
                let expect = success_probability_closed_form(n, m, step.iteration);
                worst = worst.max((step.success_probability - expect).abs());
            }
        }
    }
    CheckOutcome::measured(
        "grover-success-closed-form",
        worst,
        1e-10,
        format!("sin²((2k+1)θ) vs simulation, n <= {n_cap}, M in {{1,2,4}}"),
    )
}

fn restricted_vs_bruteforce(n_cap: usize, seed: u64) -> CheckOutcome {
    let mut worst = 0.0f64;
    let mut excess = 0.0f64;
    for n in 2..=n_cap {
        let m1_state = StateVector::uniform_superposition(n)
            .unwrap()
            .apply_oracle(&SolutionSet::canonical_m1(n).unwrap())
            .unwrap();
        let restricted = geometric_measure_m1(n).unwrap();
        let brute = geometric_measure_bruteforce_seeded(&m1_state, seed).unwrap();
        worst = worst.max((restricted.value - brute.value).abs());
        excess = excess.max(restricted.max_overlap_sq - brute.max_overlap_sq - 1e-9);

        for d in 1..=n {
            let m2_state = StateVector::uniform_superposition(n)
                .unwrap()
                .apply_oracle(&SolutionSet::canonical_m2(n, d).unwrap())
                .unwrap();
            let restricted = geometric_measure_m2_seeded(n, d, seed).unwrap();
            let brute = geometric_measure_bruteforce_seeded(&m2_state, seed).unwrap();
            worst = worst.max((restricted.value - brute.value).abs());
            excess = excess.max(restricted.max_overlap_sq - brute.max_overlap_sq - 1e-9);
        }
    }
    CheckOutcome {
        name: "restricted-vs-bruteforce".into(),
        passed: worst <= 1e-6 && excess <= 0.0,
        max_error: worst,
        tolerance: 1e-6,
        details: format!("canonical M=1 and M=2 states, n <= {n_cap}, all d"),
    }
}

fn lu_invariance(n_cap: usize, trials: usize, seed: u64) -> CheckOutcome {
    let mut rng = rng_for(seed, 8);
    let mut worst = 0.0f64;
    for t in 0..trials {
        let n = 2 + t % (n_cap - 1);
        let d = 1 + (rng.next_u64() as usize) % n;
        let base = StateVector::uniform_superposition(n)
            .unwrap()
            .apply_oracle(&SolutionSet::canonical_m2(n, d).unwrap())
            .unwrap();
        let reference = geometric_measure_bruteforce_seeded(&base, seed).unwrap();

        let mut transformed = base.clone();
        let x_mask = (rng.next_u64() as usize) % (1 << n);
        for q in 0..n {
            if x_mask & (1 << q) != 0 {
                transformed = transformed.apply_pauli_x(q).unwrap();
            }
        }
        transformed = transformed
            .permute_qubits(&random_permutation(&mut rng, n))
            .unwrap();
        let moved = geometric_measure_bruteforce_seeded(&transformed, seed).unwrap();
        worst = worst.max((moved.value - reference.value).abs());
    }
    CheckOutcome::measured(
        "lu-invariance-bruteforce",
        worst,
        1e-6,
        format!("{trials} random Pauli-X masks and permutations, n <= {n_cap}"),
    )
}

fn m1_decay(n_cap: usize) -> CheckOutcome {
    let values: Vec<f64> = (2..=n_cap)
        .map(|n| geometric_measure_m1(n).unwrap().value)
        .collect();
    let strictly_decreasing = values.windows(2).all(|w| w[1] < w[0]);
    let positive = values.iter().all(|&v| v > 1e-6);
    let worst = values
        .windows(2)
        .map(|w| (w[1] - w[0]).max(0.0))
        .fold(0.0f64, f64::max);

    // Least-squares slope of ln E against n, reported but not asserted.
    let xs: Vec<f64> = (2..=n_cap).map(|n| n as f64).collect();
    let ys: Vec<f64> = values.iter().map(|v| v.ln()).collect();
    let mx = xs.iter().sum::<f64>() / xs.len() as f64;
    let my = ys.iter().sum::<f64>() / ys.len() as f64;
    let slope = xs
        .iter()
        .zip(&ys)
        .map(|(x, y)| (x - mx) * (y - my))
        .sum::<f64>()
        / xs.iter().map(|x| (x - mx).powi(2)).sum::<f64>();

    CheckOutcome {
        name: "m1-monotonic-decay".into(),
        passed: strictly_decreasing && positive,
        max_error: worst,
        tolerance: 0.0,
        details: format!(
            "E strictly decreasing and > 1e-6 for n in 2..={n_cap}; fitted ln E slope {slope:.4} per qubit"
        ),
    }
}

fn m2_distance_ordering(n_cap: usize, seed: u64) -> CheckOutcome {
    let mut worst_gap = f64::INFINITY;
    for n in 4..=n_cap {
        let values: Vec<f64> = (1..=n)
            .map(|d| geometric_measure_m2_seeded(n, d, seed).unwrap().value)
            .collect();
        for w in values.windows(2) {
            worst_gap = worst_gap.min(w[1] - w[0]);
        }
    }
    CheckOutcome {
        name: "m2-distance-ordering".into(),
        passed: worst_gap > 0.0,
        max_error: (-worst_gap).max(0.0),
        tolerance: 0.0,
        details: format!("E increasing in d for n in 4..={n_cap}; smallest gap {worst_gap:.3e}"),
    }
}

fn beta_zero_optimality(n_cap: usize, grid: usize) -> CheckOutcome {
    let mut worst = 0.0f64;
    for n in 2..=n_cap {
        let restricted = geometric_measure_m1(n).unwrap().max_overlap_sq;
        let mut best = (0.0f64, 0.0f64, f64::NEG_INFINITY);
        for i in 0..grid {
            let alpha = i as f64 * PI / (grid - 1) as f64;
            for j in 0..grid {
                let beta = j as f64 * TAU / (grid - 1) as f64;
                let v = overlap_m1(n, alpha, beta);
                if v > best.2 {
                    best = (alpha, beta, v);
                }
            }
        }
        let (value, _, _) = refine_m1_over_alpha_beta(n, best.0, best.1);
        worst = worst.max((value - restricted).abs());
    }
    CheckOutcome::measured(
        "m1-beta-zero-optimality",
        worst,
        1e-8,
        format!("2-D (α,β) scan at {grid}x{grid} plus polish vs β=0 result, n <= {n_cap}"),
    )
}

fn optimizer_determinism(seed: u64) -> CheckOutcome {
    let a = geometric_measure_m2_seeded(5, 3, seed).unwrap();
    let b = geometric_measure_m2_seeded(5, 3, seed).unwrap();
    let mut mismatches = 0usize;
    if a.value.to_bits() != b.value.to_bits() {
        mismatches += 1;
    }
    if a.optimal != b.optimal {
        mismatches += 1;
    }
    CheckOutcome::counted(
        "optimizer-determinism",
        mismatches,
        "two seeded runs compared bitwise",
    )
}
