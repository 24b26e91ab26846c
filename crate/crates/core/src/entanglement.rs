//! Geometric measure of entanglement E_n = 1 − max |⟨ψ∣φ⟩|² over fully
//! separable states ∣φ⟩.
//!
//! Three maximizers are provided. For the canonical one-solution state the
//! search space collapses to a single angle and the optimum is located by
//! scanning the analytic derivative and bisecting its sign changes. For the
//! canonical two-solution state at Hamming distance d the block-symmetric
//! four-parameter overlap is maximized by a deterministic multi-start
//! derivative-free search. The brute-force maximizer optimizes all 2n angles
//! of an arbitrary product state on explicit state vectors and serves as the
//! reference the restricted routes are validated against.

use num_complex::Complex64;
use std::f64::consts::{PI, TAU};
use thiserror::Error;

use crate::optimize::{multistart_max, refine, MultiStartOutcome};
use crate::state::{StateVector, MAX_QUBITS};

/// Default PRNG seed for the multi-start optimizers.
pub const DEFAULT_SEED: u64 = 0x5EED;

/// Brute-force search optimizes 2n angles; above this it gets unwieldy.
pub const MAX_BRUTEFORCE_QUBITS: usize = 7;

const STEP_TOL: f64 = 1e-12;
const MAX_SWEEPS: usize = 500;
/// Two refined starts further apart than this mark a run as unconverged.
const CONVERGENCE_GAP: f64 = 1e-9;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum EntanglementError {
    #[error("geometric measure needs a qubit count in 2..={MAX_QUBITS}, got {0}")]
    QubitCountOutOfRange(usize),
    #[error("Hamming distance {d} out of range 1..={n}")]
    DistanceOutOfRange { d: usize, n: usize },
    #[error("brute-force search supports at most {MAX_BRUTEFORCE_QUBITS} qubits, got {0}")]
    UnsupportedSize(usize),
    #[error("state has squared norm {0}, expected 1 within 1e-9")]
    NotNormalized(f64),
}

pub type Result<T> = std::result::Result<T, EntanglementError>;

/// One symmetric block of a product ansatz: ∣φ⟩^⊗size with
/// ∣φ⟩ = cos(α/2)∣0⟩ + e^{iβ} sin(α/2)∣1⟩.
#[derive(Clone, Debug, PartialEq)]
pub struct AnsatzBlock {
    pub size: usize,
    pub alpha: f64,
    pub beta: f64,
}

/// Block-symmetric product-state parameterization; block sizes sum to n.
#[derive(Clone, Debug, PartialEq)]
pub struct ProductAnsatz {
    blocks: Vec<AnsatzBlock>,
}

impl ProductAnsatz {
    pub fn new(blocks: Vec<AnsatzBlock>) -> Self {
        assert!(!blocks.is_empty() && blocks.iter().all(|b| b.size > 0));
        Self { blocks }
    }

    pub fn blocks(&self) -> &[AnsatzBlock] {
        &self.blocks
    }

    pub fn n(&self) -> usize {
        self.blocks.iter().map(|b| b.size).sum()
    }

    /// Materialize the product state, first block most significant.
    pub fn state_vector(&self) -> crate::state::Result<StateVector> {
        let n = self.n();
        let mut amps = vec![Complex64::new(1.0, 0.0)];
        for block in &self.blocks {
            let phi = single_qubit(block.alpha, block.beta);
            for _ in 0..block.size {
                let mut next = Vec::with_capacity(amps.len() * 2);
                for a in &amps {
                    next.push(a * phi.0);
                    next.push(a * phi.1);
                }
                amps = next;
            }
        }
        debug_assert_eq!(amps.len(), 1 << n);
        StateVector::from_amplitudes(amps, 1e-9)
    }
}

/// Outcome of a geometric-measure maximization.
#[derive(Clone, Debug, PartialEq)]
pub struct EntanglementResult {
    /// E_n = 1 − max_overlap_sq.
    pub value: f64,
    pub max_overlap_sq: f64,
    pub optimal: ProductAnsatz,
    pub starts_used: usize,
    pub converged: bool,
    /// Final step size (trust-interval or bracket width) of the winner.
    pub residual: f64,
}

fn single_qubit(alpha: f64, beta: f64) -> (Complex64, Complex64) {
    let half = alpha / 2.0;
    (
        Complex64::new(half.cos(), 0.0),
        Complex64::from_polar(half.sin(), beta),
    )
}

/// Squared overlap of the canonical one-solution state with the symmetric
/// ansatz ∣φ⟩^⊗n:
/// (1/2^n)·∣(cos(α/2) + e^{iβ} sin(α/2))^n − 2 (e^{iβ} sin(α/2))^n∣².
pub fn overlap_m1(n: usize, alpha: f64, beta: f64) -> f64 {
    let (c, es) = single_qubit(alpha, beta);
    let sum = (c + es).powu(n as u32);
    let marked = es.powu(n as u32) * 2.0;
    (sum - marked).norm_sqr() / (1u64 << n) as f64
}

/// d/dα of [`overlap_m1`] at β = 0, in closed form.
fn overlap_m1_derivative_beta0(n: usize, alpha: f64) -> f64 {
    let half = alpha / 2.0;
    let c = half.cos();
    let s = half.sin();
    let nf = n as f64;
    let g = (c + s).powi(n as i32) - 2.0 * s.powi(n as i32);
    let gp = 0.5 * nf * ((c + s).powi(n as i32 - 1) * (c - s) - 2.0 * c * s.powi(n as i32 - 1));
    2.0 * g * gp / (1u64 << n) as f64
}

/// Squared overlap of the canonical two-solution state (Hamming distance d)
/// with the block-symmetric ansatz ∣φ⟩^⊗d ⊗ ∣φ'⟩^⊗(n−d), where (α, β)
/// parameterize ∣φ⟩ and (γ, δ) parameterize ∣φ'⟩.
pub fn overlap_m2(n: usize, d: usize, alpha: f64, beta: f64, gamma: f64, delta: f64) -> Result<f64> {
    check_n(n)?;
    if d == 0 || d > n {
        return Err(EntanglementError::DistanceOutOfRange { d, n });
    }
    Ok(overlap_m2_raw(n, d, alpha, beta, gamma, delta))
}

fn overlap_m2_raw(n: usize, d: usize, alpha: f64, beta: f64, gamma: f64, delta: f64) -> f64 {
    let (ca, esa) = single_qubit(alpha, beta);
    let (cg, esg) = single_qubit(gamma, delta);
    let rest = (n - d) as u32;
    let uniform = (ca + esa).powu(d as u32) * (cg + esg).powu(rest);
    // 2·e^{i(n−d)δ}·sin^{n−d}(γ/2)·(cos^d(α/2) + e^{idβ}·sin^d(α/2))
    let marked = esg.powu(rest) * (ca.powu(d as u32) + esa.powu(d as u32)) * 2.0;
    (uniform - marked).norm_sqr() / (1u64 << n) as f64
}

fn check_n(n: usize) -> Result<()> {
    if !(2..=MAX_QUBITS).contains(&n) {
        return Err(EntanglementError::QubitCountOutOfRange(n));
    }
    Ok(())
}

/// E_n of the canonical one-solution state.
///
/// The optimal β is zero, so the search is one-dimensional: scan 10⁴ points
/// of the analytic derivative over α ∈ [0, π], bisect every sign change to
/// width 1e-13, and keep the best stationary point or interval endpoint.
pub fn geometric_measure_m1(n: usize) -> Result<EntanglementResult> {
    check_n(n)?;
    const SCAN_POINTS: usize = 10_000;
    const BRACKET_TOL: f64 = 1e-13;

    let mut candidates = vec![0.0, PI];
    let step = PI / (SCAN_POINTS - 1) as f64;
    let mut prev = overlap_m1_derivative_beta0(n, 0.0);
    let mut prev_alpha = 0.0;
    for k in 1..SCAN_POINTS {
        let alpha = k as f64 * step;
        let here = overlap_m1_derivative_beta0(n, alpha);
        if here == 0.0 {
            candidates.push(alpha);
        } else if prev != 0.0 && prev.signum() != here.signum() {
            let (mut lo, mut hi) = (prev_alpha, alpha);
            let sign_lo = prev.signum();
            while hi - lo > BRACKET_TOL {
                let mid = 0.5 * (lo + hi);
                let dm = overlap_m1_derivative_beta0(n, mid);
                if dm == 0.0 {
                    lo = mid;
                    hi = mid;
                } else if dm.signum() == sign_lo {
                    lo = mid;
                } else {
                    hi = mid;
                }
            }
            candidates.push(0.5 * (lo + hi));
        }
        prev = here;
        prev_alpha = alpha;
    }

    // Ascending α means ties resolve to the smallest angle.
    candidates.sort_by(|a, b| a.total_cmp(b));
    let mut best_alpha = candidates[0];
    let mut best = overlap_m1(n, best_alpha, 0.0);
    for &alpha in &candidates[1..] {
        let v = overlap_m1(n, alpha, 0.0);
        if v > best + 1e-15 {
            best = v;
            best_alpha = alpha;
        }
    }
    let best = best.clamp(0.0, 1.0);

    Ok(EntanglementResult {
        value: 1.0 - best,
        max_overlap_sq: best,
        optimal: ProductAnsatz::new(vec![AnsatzBlock {
            size: n,
            alpha: best_alpha,
            beta: 0.0,
        }]),
        starts_used: candidates.len(),
        converged: true,
        residual: BRACKET_TOL,
    })
}

/// E_n of the canonical two-solution state at Hamming distance d, using the
/// default seed.
pub fn geometric_measure_m2(n: usize, d: usize) -> Result<EntanglementResult> {
    geometric_measure_m2_seeded(n, d, DEFAULT_SEED)
}

/// Seeded variant of [`geometric_measure_m2`]: 32 Halton starts plus 32
/// seeded starts, each refined by coordinate-wise golden-section descent.
/// For d = n the state is fully permutation symmetric and the optimization
/// collapses to the two (α, β) parameters.
pub fn geometric_measure_m2_seeded(n: usize, d: usize, seed: u64) -> Result<EntanglementResult> {
    check_n(n)?;
    if d == 0 || d > n {
        return Err(EntanglementError::DistanceOutOfRange { d, n });
    }

    let symmetric = d == n;
    let bounds: Vec<(f64, f64)> = if symmetric {
        vec![(0.0, PI), (0.0, TAU)]
    } else {
        vec![(0.0, PI), (0.0, TAU), (0.0, PI), (0.0, TAU)]
    };
    let mut objective = |x: &[f64]| {
        if symmetric {
            overlap_m2_raw(n, d, x[0], x[1], 0.0, 0.0)
        } else {
            overlap_m2_raw(n, d, x[0], x[1], x[2], x[3])
        }
    };
    let outcome = multistart_max(&mut objective, &bounds, 32, 32, seed, STEP_TOL, MAX_SWEEPS);

    let blocks = if symmetric {
        vec![AnsatzBlock {
            size: n,
            alpha: outcome.x[0],
            beta: outcome.x[1],
        }]
    } else {
        vec![
            AnsatzBlock {
                size: d,
                alpha: outcome.x[0],
                beta: outcome.x[1],
            },
            AnsatzBlock {
                size: n - d,
                alpha: outcome.x[2],
                beta: outcome.x[3],
            },
        ]
    };
    Ok(result_from_outcome(outcome, blocks))
}

/// Unrestricted E_n of an arbitrary state by direct search over all n
/// single-qubit factors, using the default seed.
pub fn geometric_measure_bruteforce(state: &StateVector) -> Result<EntanglementResult> {
    geometric_measure_bruteforce_seeded(state, DEFAULT_SEED)
}

/// Seeded variant of [`geometric_measure_bruteforce`]: the same multi-start
/// scheme scaled up to 256 starts over the 2n angles of ⊗ᵢ∣φᵢ⟩. This is the
/// reference maximizer the symmetry-restricted routes are checked against.
pub fn geometric_measure_bruteforce_seeded(
    state: &StateVector,
    seed: u64,
) -> Result<EntanglementResult> {
    let n = state.n();
    if n > MAX_BRUTEFORCE_QUBITS {
        return Err(EntanglementError::UnsupportedSize(n));
    }
    let norm_sq = state.norm_sq();
    if (norm_sq - 1.0).abs() > 1e-9 {
        return Err(EntanglementError::NotNormalized(norm_sq));
    }

    let dim = state.dim();
    let bounds: Vec<(f64, f64)> = (0..2 * n)
        .map(|j| if j % 2 == 0 { (0.0, PI) } else { (0.0, TAU) })
        .collect();
    let amps = state.amplitudes().to_vec();
    let mut scratch = vec![Complex64::new(0.0, 0.0); dim];
    let mut objective = move |x: &[f64]| {
        scratch[0] = Complex64::new(1.0, 0.0);
        let mut len = 1usize;
        for q in 0..n {
            let phi = single_qubit(x[2 * q], x[2 * q + 1]);
            for j in (0..len).rev() {
                let a = scratch[j];
                scratch[2 * j] = a * phi.0;
                scratch[2 * j + 1] = a * phi.1;
            }
            len *= 2;
        }
        let mut overlap = Complex64::new(0.0, 0.0);
        for (a, w) in amps.iter().zip(scratch.iter()) {
            overlap += a.conj() * w;
        }
        overlap.norm_sqr()
    };
    let outcome = multistart_max(&mut objective, &bounds, 128, 128, seed, STEP_TOL, MAX_SWEEPS);

    let blocks = (0..n)
        .map(|q| AnsatzBlock {
            size: 1,
            alpha: outcome.x[2 * q],
            beta: outcome.x[2 * q + 1],
        })
        .collect();
    Ok(result_from_outcome(outcome, blocks))
}

fn result_from_outcome(outcome: MultiStartOutcome, blocks: Vec<AnsatzBlock>) -> EntanglementResult {
    let mut values = outcome.start_values.clone();
    values.sort_by(|a, b| b.total_cmp(a));
    let converged = values.len() < 2 || values[0] - values[1] <= CONVERGENCE_GAP;
    // The true overlap cannot exceed 1; the closed forms may by ~1e-16.
    let overlap = outcome.value.clamp(0.0, 1.0);
    EntanglementResult {
        value: 1.0 - overlap,
        max_overlap_sq: overlap,
        optimal: ProductAnsatz::new(blocks),
        starts_used: outcome.start_values.len(),
        converged,
        residual: outcome.residual,
    }
}

/// Polish an angle assignment of the m1 overlap over both α and β; test
/// support for the β = 0 optimality check.
pub fn refine_m1_over_alpha_beta(n: usize, alpha: f64, beta: f64) -> (f64, f64, f64) {
    let mut x = vec![alpha, beta];
    let bounds = [(0.0, PI), (0.0, TAU)];
    let mut objective = |x: &[f64]| overlap_m1(n, x[0], x[1]);
    let (value, _) = refine(&mut objective, &mut x, &bounds, STEP_TOL, MAX_SWEEPS);
    (value, x[0], x[1])
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::state::SolutionSet;

    /// Explicit-vector overlap used as the oracle for the closed-form
    /// expressions: builds ⊗ blocks by hand and calls inner_product.
    fn explicit_overlap_sq(state: &StateVector, blocks: &[(usize, f64, f64)]) -> f64 {
        let mut prod = vec![Complex64::new(1.0, 0.0)];
        for &(size, alpha, beta) in blocks {
            for _ in 0..size {
                let c = Complex64::new((alpha / 2.0).cos(), 0.0);
                let s = Complex64::from_polar((alpha / 2.0).sin(), beta);
                let mut next = Vec::with_capacity(prod.len() * 2);
                for a in &prod {
                    next.push(a * c);
                    next.push(a * s);
                }
                prod = next;
            }
        }
        let product_state = StateVector::from_amplitudes(prod, 1e-9).unwrap();
        state.inner_product(&product_state).unwrap().norm_sqr()
    }

    fn canonical_m1_state(n: usize) -> StateVector {
        StateVector::uniform_superposition(n)
            .unwrap()
            .apply_oracle(&SolutionSet::canonical_m1(n).unwrap())
            .unwrap()
    }

    fn canonical_m2_state(n: usize, d: usize) -> StateVector {
        StateVector::uniform_superposition(n)
            .unwrap()
            .apply_oracle(&SolutionSet::canonical_m2(n, d).unwrap())
            .unwrap()
    }

    /// Deterministic pseudo-random angles for cross-checks.
    fn test_angles(count: usize, seed: u64) -> Vec<f64> {
        let mut rng = seed.wrapping_mul(0x9E3779B97F4A7C15).wrapping_add(1);
        (0..count)
            .map(|_| {
                rng ^= rng << 13;
                rng ^= rng >> 7;
                rng ^= rng << 17;
                (rng >> 11) as f64 / (1u64 << 53) as f64
            })
            .collect()
    }

    #[test]
    fn overlap_m1_pinned_values() {
        assert!((overlap_m1(2, 0.0, 0.0) - 0.25).abs() < 1e-15);
        assert!((overlap_m1(2, 0.0, 1.234) - 0.25).abs() < 1e-15);
        assert!((overlap_m1(2, PI, 0.0) - 0.25).abs() < 1e-15);
    }

    #[test]
    fn overlap_m1_matches_explicit_vectors() {
        for n in 2..=6 {
            let state = canonical_m1_state(n);
            let angles = test_angles(20, n as u64);
            for pair in angles.chunks(2) {
                let alpha = pair[0] * PI;
                let beta = pair[1] * TAU;
                let closed = overlap_m1(n, alpha, beta);
                let explicit = explicit_overlap_sq(&state, &[(n, alpha, beta)]);
                assert!(
                    (closed - explicit).abs() < 1e-12,
                    "n={n} alpha={alpha} beta={beta}: {closed} vs {explicit}"
                );
            }
        }
    }

    #[test]
    fn overlap_m2_matches_explicit_vectors() {
        for n in 2..=6usize {
            for d in 1..=n {
                let state = canonical_m2_state(n, d);
                let angles = test_angles(16, (n * 10 + d) as u64);
                for quad in angles.chunks(4) {
                    let (a, b, g, dl) = (quad[0] * PI, quad[1] * TAU, quad[2] * PI, quad[3] * TAU);
                    let closed = overlap_m2(n, d, a, b, g, dl).unwrap();
                    let explicit = if d == n {
                        explicit_overlap_sq(&state, &[(d, a, b)])
                    } else {
                        explicit_overlap_sq(&state, &[(d, a, b), (n - d, g, dl)])
                    };
                    assert!(
                        (closed - explicit).abs() < 1e-12,
                        "n={n} d={d}: {closed} vs {explicit}"
                    );
                }
            }
        }
    }

    #[test]
    fn overlap_m2_ignores_second_block_when_d_equals_n() {
        let v1 = overlap_m2(4, 4, 1.0, 2.0, 0.3, 0.4).unwrap();
        let v2 = overlap_m2(4, 4, 1.0, 2.0, 2.9, 5.5).unwrap();
        assert_eq!(v1.to_bits(), v2.to_bits());
    }

    #[test]
    fn overlap_m2_block_merge() {
        // With α=γ, β=δ the ansatz is the fully symmetric ∣φ⟩^⊗n.
        for d in 1..=4usize {
            let state = canonical_m2_state(4, d);
            let merged = overlap_m2(4, d, 0.9, 1.1, 0.9, 1.1).unwrap();
            let explicit = explicit_overlap_sq(&state, &[(4, 0.9, 1.1)]);
            assert!((merged - explicit).abs() < 1e-12);
        }
    }

    #[test]
    fn overlap_m2_rejects_bad_distance() {
        assert!(overlap_m2(3, 0, 0.0, 0.0, 0.0, 0.0).is_err());
        assert!(overlap_m2(3, 4, 0.0, 0.0, 0.0, 0.0).is_err());
    }

    #[test]
    fn m1_two_qubits_is_half() {
        let r = geometric_measure_m1(2).unwrap();
        assert!((r.value - 0.5).abs() < 1e-12, "E = {}", r.value);
        assert!((r.value - (1.0 - r.max_overlap_sq)).abs() < 1e-14);
        assert!(r.converged);
    }

    #[test]
    fn m1_needs_two_qubits() {
        assert!(matches!(
            geometric_measure_m1(1),
            Err(EntanglementError::QubitCountOutOfRange(1))
        ));
    }

    #[test]
    fn m1_decreases_with_n_early() {
        let e2 = geometric_measure_m1(2).unwrap().value;
        let e3 = geometric_measure_m1(3).unwrap().value;
        let e4 = geometric_measure_m1(4).unwrap().value;
        assert!(e2 > e3 && e3 > e4);
        assert!(e3 > 0.0 && e3 < 0.5);
    }

    #[test]
    fn m2_two_qubits_is_separable() {
        for d in 1..=2 {
            let r = geometric_measure_m2(2, d).unwrap();
            assert!(r.value.abs() < 1e-9, "d={d}: E = {}", r.value);
        }
    }

    #[test]
    fn m2_three_qubits_collapse_to_half() {
        for d in 1..=3 {
            let r = geometric_measure_m2(3, d).unwrap();
            assert!((r.value - 0.5).abs() < 1e-6, "d={d}: E = {}", r.value);
        }
    }

    #[test]
    fn m2_rejects_bad_arguments() {
        assert!(geometric_measure_m2(1, 1).is_err());
        assert!(geometric_measure_m2(4, 0).is_err());
        assert!(geometric_measure_m2(4, 5).is_err());
    }

    #[test]
    fn bruteforce_on_product_state_is_zero() {
        let basis = StateVector::basis_state(3, 5).unwrap();
        let r = geometric_measure_bruteforce(&basis).unwrap();
        assert!(r.value.abs() < 1e-9, "E = {}", r.value);

        let uniform = StateVector::uniform_superposition(3).unwrap();
        let r = geometric_measure_bruteforce(&uniform).unwrap();
        assert!(r.value.abs() < 1e-9, "E = {}", r.value);
    }

    #[test]
    fn bruteforce_bell_like_value() {
        let r = geometric_measure_bruteforce(&canonical_m1_state(2)).unwrap();
        assert!((r.value - 0.5).abs() < 1e-8, "E = {}", r.value);
    }

    #[test]
    fn bruteforce_rejects_large_or_unnormalized() {
        let big = StateVector::uniform_superposition(8).unwrap();
        assert!(matches!(
            geometric_measure_bruteforce(&big),
            Err(EntanglementError::UnsupportedSize(8))
        ));
    }

    #[test]
    fn results_are_deterministic() {
        let a = geometric_measure_m2_seeded(4, 2, 123).unwrap();
        let b = geometric_measure_m2_seeded(4, 2, 123).unwrap();
        assert_eq!(a.value.to_bits(), b.value.to_bits());
        assert_eq!(a.optimal, b.optimal);
        assert_eq!(a.converged, b.converged);

        let s = canonical_m2_state(3, 2);
        let x = geometric_measure_bruteforce_seeded(&s, 7).unwrap();
        let y = geometric_measure_bruteforce_seeded(&s, 7).unwrap();
        assert_eq!(x.value.to_bits(), y.value.to_bits());
        assert_eq!(x.optimal, y.optimal);
    }

    #[test]
    fn ansatz_state_vector_is_normalized() {
        let ansatz = ProductAnsatz::new(vec![
            AnsatzBlock {
                size: 2,
                alpha: 1.0,
                beta: 0.5,
            },
            AnsatzBlock {
                size: 1,
                alpha: 2.0,
                beta: 4.0,
            },
        ]);
        let state = ansatz.state_vector().unwrap();
        assert_eq!(state.n(), 3);
        assert!((state.norm_sq() - 1.0).abs() < 1e-12);
    }
}
