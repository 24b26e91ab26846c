//! Quantum states after the first oracle call of Grover's search, their
//! hypergraph-state representation, and their geometric measure of
//! entanglement.
//!
//! The crate covers four connected pieces:
//!
//! * [`state`] — dense state vectors with the phase-oracle / C^kZ / Pauli-X /
//!   permutation gate set.
//! * [`boolean`] and [`hypergraph`] — the exact correspondence between real
//!   equally weighted states, Boolean functions (via the GF(2) Möbius
//!   transform), and hypergraphs, including the explicit hypergraphs of the
//!   one- and two-solution Grover states.
//! * [`entanglement`] — symmetry-restricted and brute-force maximization of
//!   the product-state overlap, yielding E_n = 1 − max ∣⟨ψ∣φ⟩∣².
//! * [`grover`] — the full oracle + diffusion iteration with success
//!   probability traces.
//!
//! Everything is deterministic: the optimizers draw their starts from a
//! seeded generator (default seed [`entanglement::DEFAULT_SEED`]), so equal
//! inputs give bitwise-equal outputs.

pub mod boolean;
pub mod entanglement;
pub mod grover;
pub mod hypergraph;
mod optimize;
pub mod state;
pub mod verify;

pub use boolean::{
    anf_to_function, anf_to_hypergraph, function_from_solutions, mobius_transform,
    rew_from_function, Anf, BooleanFunction,
};
pub use entanglement::{
    geometric_measure_bruteforce, geometric_measure_bruteforce_seeded, geometric_measure_m1,
    geometric_measure_m2, geometric_measure_m2_seeded, overlap_m1, overlap_m2, AnsatzBlock,
    EntanglementResult, ProductAnsatz, DEFAULT_SEED,
};
pub use grover::{diffusion, optimal_iterations, run_grover, GroverTrace, TraceStep};
pub use hypergraph::{grover_m1_hypergraph, grover_m2_hypergraph, Hypergraph, Phase};
pub use state::{SolutionSet, StateVector, MAX_QUBITS};
