//! Cross-module invariants that sit outside the acceptance gate: the β = 0
//! optimality of the one-solution overlap and the range guarantees of the
//! measure results.

use std::f64::consts::{PI, TAU};

use hyperstate::entanglement::{
    geometric_measure_bruteforce_seeded, geometric_measure_m1, geometric_measure_m2_seeded,
    overlap_m1, refine_m1_over_alpha_beta, DEFAULT_SEED,
};
use hyperstate::state::{SolutionSet, StateVector};

/// Maximizing over both α and β must not beat the β = 0 line: brute 2-D scan
/// at 2000x2000 plus a local polish, compared within 1e-8.
#[test]
fn beta_zero_is_optimal_for_m1() {
    const GRID: usize = 2000;
    for n in 2..=6usize {
        let restricted = geometric_measure_m1(n).unwrap().max_overlap_sq;
        let mut best = (0.0f64, 0.0f64, f64::NEG_INFINITY);
        for i in 0..GRID {
            let alpha = i as f64 * PI / (GRID - 1) as f64;
            for j in 0..GRID {
                let beta = j as f64 * TAU / (GRID - 1) as f64;
                let v = overlap_m1(n, alpha, beta);
                if v > best.2 {
                    best = (alpha, beta, v);
                }
            }
        }
        let (two_dim, _, _) = refine_m1_over_alpha_beta(n, best.0, best.1);
        assert!(
            (two_dim - restricted).abs() <= 1e-8,
            "n={n}: 2-D max {two_dim} vs beta=0 max {restricted}"
        );
    }
}

#[test]
fn measure_results_stay_in_range() {
    let mut results = Vec::new();
    for n in 2..=4usize {
        results.push(geometric_measure_m1(n).unwrap());
        for d in 1..=n {
            results.push(geometric_measure_m2_seeded(n, d, DEFAULT_SEED).unwrap());
            let state = StateVector::uniform_superposition(n)
                .unwrap()
                .apply_oracle(&SolutionSet::canonical_m2(n, d).unwrap())
                .unwrap();
            results.push(geometric_measure_bruteforce_seeded(&state, DEFAULT_SEED).unwrap());
        }
    }
    for r in &results {
        assert!(r.value >= 0.0 && r.value < 1.0, "E out of range: {}", r.value);
        assert!(
            r.max_overlap_sq > 0.0 && r.max_overlap_sq <= 1.0,
            "overlap out of range: {}",
            r.max_overlap_sq
        );
        assert!((r.value - (1.0 - r.max_overlap_sq)).abs() <= 1e-14);
        assert!(r.converged, "canonical runs must converge");
    }
}
