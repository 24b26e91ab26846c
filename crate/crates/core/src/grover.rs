//! Full Grover iteration (oracle + diffusion) with success-probability
//! traces. The analysis elsewhere in the crate only concerns the state after
//! the first oracle call; this module supplies the surrounding algorithm.

use num_complex::Complex64;
use thiserror::Error;

use crate::state::{SolutionSet, StateError, StateVector};

#[derive(Debug, Error, Clone, PartialEq)]
pub enum GroverError {
    #[error("solution count {m} must be smaller than the search space 2^{n}")]
    TooManySolutions { m: usize, n: usize },
    #[error(transparent)]
    State(#[from] StateError),
}

pub type Result<T> = std::result::Result<T, GroverError>;

/// One recorded point of a Grover run.
#[derive(Clone, Debug)]
pub struct TraceStep {
    pub iteration: usize,
    pub success_probability: f64,
    /// Post-iteration state, kept only when snapshots were requested.
    pub state: Option<StateVector>,
}

/// Success-probability trace of a Grover run; entry k is the state after k
/// full oracle+diffusion iterations, entry 0 the initial superposition.
#[derive(Clone, Debug)]
pub struct GroverTrace {
    pub n: usize,
    pub solutions: SolutionSet,
    pub steps: Vec<TraceStep>,
}

/// Inversion about the mean: (2∣ψ₀⟩⟨ψ₀∣ − 𝟙)∣ψ⟩.
pub fn diffusion(state: &StateVector) -> StateVector {
    let dim = state.dim();
    let mean: Complex64 = state.amplitudes().iter().sum::<Complex64>() / dim as f64;
    let amps = state
        .amplitudes()
        .iter()
        .map(|&a| 2.0 * mean - a)
        .collect();
    StateVector::from_amplitudes(amps, 1e-9).expect("reflection preserves the norm")
}

/// Run `iterations` Grover iterations and record the success probability
/// after each one. `snapshots` additionally stores every intermediate state.
pub fn run_grover(
    n: usize,
    sols: &SolutionSet,
    iterations: usize,
    snapshots: bool,
) -> Result<GroverTrace> {
    if sols.len() >= 1 << sols.n() {
        return Err(GroverError::TooManySolutions {
            m: sols.len(),
            n: sols.n(),
        });
    }
    let mut state = StateVector::uniform_superposition(n)?;
    let mut steps = Vec::with_capacity(iterations + 1);
    steps.push(TraceStep {
        iteration: 0,
        success_probability: state.success_probability(sols)?,
        state: snapshots.then(|| state.clone()),
    });
    for k in 1..=iterations {
        state = diffusion(&state.apply_oracle(sols)?);
        steps.push(TraceStep {
            iteration: k,
            success_probability: state.success_probability(sols)?,
            state: snapshots.then(|| state.clone()),
        });
    }
    Ok(GroverTrace {
        n,
        solutions: sols.clone(),
        steps,
    })
}

/// Closed-form success probability sin²((2k+1)·θ) with θ = asin(√(M/2^n)).
pub fn success_probability_closed_form(n: usize, m: usize, k: usize) -> f64 {
    let theta = (m as f64 / (1u64 << n) as f64).sqrt().asin();
    ((2 * k + 1) as f64 * theta).sin().powi(2)
}

/// Iteration count maximizing the closed-form success probability,
/// round(π/(4θ) − 1/2), at least 1.
pub fn optimal_iterations(n: usize, m: usize) -> usize {
    let theta = (m as f64 / (1u64 << n) as f64).sqrt().asin();
    let k = (std::f64::consts::FRAC_PI_2 / (2.0 * theta) - 0.5).round();
    k.max(1.0) as usize
}
