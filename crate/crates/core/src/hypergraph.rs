//! Hypergraphs over qubits, state synthesis via C^kZ products, the explicit
//! constructions for the one- and two-solution Grover states, and JSON/DOT
//! serialization.
//!
//! Edge masks use index-bit positions like everything else in this crate
//! (vertex `v` is index bit `n - 1 - v`); serialization speaks sorted 0-based
//! vertex lists. Edges are kept in a canonical order: ascending by edge order
//! (popcount), then by vertex-set value with vertex 0 least significant. That
//! makes equality and serialized output deterministic.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::boolean::{anf_to_hypergraph, function_from_solutions, mobius_transform};
use crate::state::{SolutionSet, StateVector, MAX_QUBITS};

#[derive(Debug, Error, Clone, PartialEq)]
pub enum HypergraphError {
    #[error("vertex count must be in 1..={MAX_QUBITS}, got {0}")]
    VertexCountOutOfRange(usize),
    #[error("M=2 construction needs n >= 2, got {0}")]
    TooFewQubits(usize),
    #[error("Hamming distance {d} out of range 1..={n}")]
    DistanceOutOfRange { d: usize, n: usize },
    #[error("edge mask must be nonempty (order-0 terms belong to the global phase)")]
    EmptyEdge,
    #[error("edge mask {mask:#b} uses bits outside an {n}-vertex hypergraph")]
    EdgeOutOfRange { mask: usize, n: usize },
    #[error("duplicate edge {0:?}")]
    DuplicateEdge(Vec<usize>),
    #[error("vertex {vertex} out of range for {n} vertices")]
    VertexOutOfRange { vertex: usize, n: usize },
    #[error("edge {0:?} repeats a vertex")]
    RepeatedVertex(Vec<usize>),
    #[error("phase must be 1 or -1, got {0}")]
    InvalidPhase(i8),
    #[error("permutation is not a bijection on 0..{0}")]
    InvalidPermutation(usize),
    #[error("malformed JSON at line {line}, column {column}: {message}")]
    Parse {
        line: usize,
        column: usize,
        message: String,
    },
}

pub type Result<T> = std::result::Result<T, HypergraphError>;

/// Global ±1 phase of a hypergraph state.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Phase {
    Plus,
    Minus,
}

impl Phase {
    pub fn to_i8(self) -> i8 {
        match self {
            Phase::Plus => 1,
            Phase::Minus => -1,
        }
    }

    pub fn from_i8(value: i8) -> Result<Self> {
        match value {
            1 => Ok(Phase::Plus),
            -1 => Ok(Phase::Minus),
            other => Err(HypergraphError::InvalidPhase(other)),
        }
    }
}

/// `n` vertices, a set of nonempty hyperedges, and a global ±1 phase.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Hypergraph {
    n: usize,
    edges: Vec<usize>,
    phase: Phase,
}

/// Vertex-set value of an index-bit mask: bit reversal within n bits.
fn vertex_mask(mask: usize, n: usize) -> usize {
    mask.reverse_bits() >> (usize::BITS as usize - n)
}

fn canonical_key(mask: usize, n: usize) -> (u32, usize) {
    (mask.count_ones(), vertex_mask(mask, n))
}

impl Hypergraph {
    /// Build from index-bit edge masks; rejects empty, out-of-range, or
    /// duplicate edges and stores them canonically ordered.
    pub fn new(n: usize, mut edges: Vec<usize>, phase: Phase) -> Result<Self> {
        if n == 0 || n > MAX_QUBITS {
            return Err(HypergraphError::VertexCountOutOfRange(n));
        }
        for &mask in &edges {
            if mask == 0 {
                return Err(HypergraphError::EmptyEdge);
            }
            if mask >> n != 0 {
                return Err(HypergraphError::EdgeOutOfRange { mask, n });
            }
        }
        edges.sort_unstable_by_key(|&m| canonical_key(m, n));
        if let Some(w) = edges.windows(2).find(|w| w[0] == w[1]) {
            return Err(HypergraphError::DuplicateEdge(mask_to_vertices(w[0], n)));
        }
        Ok(Self { n, edges, phase })
    }

    /// Build from 0-based vertex lists, one per edge.
    pub fn from_vertex_lists(n: usize, lists: &[Vec<usize>], phase: Phase) -> Result<Self> {
        let mut edges = Vec::with_capacity(lists.len());
        for list in lists {
            if list.is_empty() {
                return Err(HypergraphError::EmptyEdge);
            }
            let mut mask = 0usize;
            for &vertex in list {
                if vertex >= n {
                    return Err(HypergraphError::VertexOutOfRange { vertex, n });
                }
                let bit = 1 << (n - 1 - vertex);
                if mask & bit != 0 {
                    return Err(HypergraphError::RepeatedVertex(list.clone()));
                }
                mask |= bit;
            }
            edges.push(mask);
        }
        Self::new(n, edges, phase)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn phase(&self) -> Phase {
        self.phase
    }

    /// Edge masks in canonical order.
    pub fn edge_masks(&self) -> &[usize] {
        &self.edges
    }

    /// Edges as sorted vertex lists, in canonical order.
    pub fn edge_vertex_lists(&self) -> Vec<Vec<usize>> {
        self.edges
            .iter()
            .map(|&m| mask_to_vertices(m, self.n))
            .collect()
    }

    /// Multiset of edge orders (popcounts), ascending.
    pub fn edge_orders(&self) -> Vec<usize> {
        self.edges.iter().map(|&m| m.count_ones() as usize).collect()
    }

    /// Synthesize the quantum state: phase · Π_e C^eZ ∣ψ₀⟩.
    ///
    /// The C^kZ gates are diagonal, so the application order is irrelevant.
    pub fn state_vector(&self) -> StateVector {
        let mut psi = StateVector::uniform_superposition(self.n)
            .expect("vertex count validated at construction");
        for &mask in &self.edges {
            psi.ckz_in_place(mask);
        }
        if self.phase == Phase::Minus {
            psi.negate_in_place();
        }
        psi
    }

    /// Relabel vertices: vertex `v` becomes vertex `perm[v]`.
    pub fn permute_vertices(&self, perm: &[usize]) -> Result<Self> {
        let n = self.n;
        if perm.len() != n {
            return Err(HypergraphError::InvalidPermutation(n));
        }
        let mut seen = vec![false; n];
        for &p in perm {
            if p >= n || seen[p] {
                return Err(HypergraphError::InvalidPermutation(n));
            }
            seen[p] = true;
        }
        let edges = self
            .edges
            .iter()
            .map(|&mask| {
                let mut out = 0usize;
                for b in 0..n {
                    if mask & (1 << b) != 0 {
                        out |= 1 << (n - 1 - perm[n - 1 - b]);
                    }
                }
                out
            })
            .collect();
        Self::new(n, edges, self.phase)
    }

    /// Canonical JSON: `{"n":..,"phase":±1,"edges":[[..],..]}`.
    pub fn to_json(&self) -> String {
        let raw = HypergraphJson {
            n: self.n,
            phase: self.phase.to_i8(),
            edges: self.edge_vertex_lists(),
        };
        serde_json::to_string(&raw).expect("hypergraph serialization cannot fail")
    }

    /// Parse and validate the JSON produced by [`Self::to_json`].
    pub fn from_json(text: &str) -> Result<Self> {
        let raw: HypergraphJson =
            serde_json::from_str(text).map_err(|e| HypergraphError::Parse {
                line: e.line(),
                column: e.column(),
                message: e.to_string(),
            })?;
        if raw.n == 0 || raw.n > MAX_QUBITS {
            return Err(HypergraphError::VertexCountOutOfRange(raw.n));
        }
        let phase = Phase::from_i8(raw.phase)?;
        Self::from_vertex_lists(raw.n, &raw.edges, phase)
    }

    /// Graphviz rendering, best effort: order-1 edges become filled nodes,
    /// order-2 edges plain `--` links, higher orders a point-shaped helper
    /// node linked to every member.
    pub fn to_dot(&self) -> String {
        let mut out = String::from("graph hypergraph {\n");
        out.push_str("  node [shape=circle];\n");
        if self.phase == Phase::Minus {
            out.push_str("  label=\"global phase -1\";\n");
        }
        let filled: Vec<bool> = {
            let mut f = vec![false; self.n];
            for &mask in &self.edges {
                if mask.count_ones() == 1 {
                    f[mask_to_vertices(mask, self.n)[0]] = true;
                }
            }
            f
        };
        for (v, &is_filled) in filled.iter().enumerate() {
            if is_filled {
                out.push_str(&format!("  v{v} [label=\"{v}\", style=filled];\n"));
            } else {
                out.push_str(&format!("  v{v} [label=\"{v}\"];\n"));
            }
        }
        let mut helper = 0usize;
        for &mask in &self.edges {
            let vertices = mask_to_vertices(mask, self.n);
            match vertices.len() {
                1 => {}
                2 => out.push_str(&format!("  v{} -- v{};\n", vertices[0], vertices[1])),
                _ => {
                    out.push_str(&format!(
                        "  e{helper} [shape=point, label=\"\", width=0.1];\n"
                    ));
                    for v in &vertices {
                        out.push_str(&format!("  e{helper} -- v{v};\n"));
                    }
                    helper += 1;
                }
            }
        }
        out.push_str("}\n");
        out
    }
}

#[derive(Serialize, Deserialize)]
struct HypergraphJson {
    n: usize,
    phase: i8,
    edges: Vec<Vec<usize>>,
}

fn mask_to_vertices(mask: usize, n: usize) -> Vec<usize> {
    (0..n).filter(|&v| mask & (1 << (n - 1 - v)) != 0).collect()
}

/// Hypergraph of the single-solution state ∣ψ_{M=1}⟩: one edge of order n.
pub fn grover_m1_hypergraph(n: usize) -> Result<Hypergraph> {
    Hypergraph::new(n, vec![(1 << n) - 1], Phase::Plus)
}

/// Hypergraph of the canonical two-solution state at Hamming distance `d`.
///
/// The edge set is defined by the algebraic normal form of the solution
/// indicator, which pins down the prose recipe exactly: the last n−d
/// vertices form a base edge that is joined with every proper subset of the
/// first d vertices, and for d = n the empty subset turns into a global −1
/// phase. The order-n edge never occurs.
pub fn grover_m2_hypergraph(n: usize, d: usize) -> Result<Hypergraph> {
    if n > MAX_QUBITS {
        return Err(HypergraphError::VertexCountOutOfRange(n));
    }
    if n < 2 {
        return Err(HypergraphError::TooFewQubits(n));
    }
    if d == 0 || d > n {
        return Err(HypergraphError::DistanceOutOfRange { d, n });
    }
    let sols = SolutionSet::canonical_m2(n, d).expect("arguments validated");
    let f = function_from_solutions(&sols);
    Ok(anf_to_hypergraph(&mobius_transform(&f)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    /// Closed-form edge family for the canonical M=2 state: {G ∪ S} with G
    /// the last n−d vertices and S any proper subset of the first d. Kept
    /// independent of the Möbius pipeline on purpose.
    fn closed_form_m2(n: usize, d: usize) -> (Vec<usize>, Phase) {
        let g = (1usize << (n - d)) - 1;
        let first_d = ((1usize << d) - 1) << (n - d);
        let mut edges = Vec::new();
        let mut phase = Phase::Plus;
        let mut s = first_d;
        loop {
            // Every submask of the first-d block except the full block.
            s = (s - 1) & first_d;
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

    #[test]
    fn empty_hypergraph_is_uniform() {
        let h = Hypergraph::new(2, vec![], Phase::Plus).unwrap();
        assert_eq!(
            h.state_vector(),
            StateVector::uniform_superposition(2).unwrap()
        );
    }

    #[test]
    fn single_full_edge_flips_all_ones() {
        let h = Hypergraph::new(2, vec![0b11], Phase::Plus).unwrap();
        let re: Vec<f64> = h.state_vector().amplitudes().iter().map(|a| a.re).collect();
        assert_eq!(re, vec![0.5, 0.5, 0.5, -0.5]);
    }

    #[test]
    fn local_z_pair_with_minus_phase() {
        // Z on both qubits with a global minus: the canonical M=2, d=2 state
        // for n=2.
        let h = Hypergraph::from_vertex_lists(2, &[vec![0], vec![1]], Phase::Minus).unwrap();
        let re: Vec<f64> = h.state_vector().amplitudes().iter().map(|a| a.re).collect();
        assert_eq!(re, vec![-0.5, 0.5, 0.5, -0.5]);
    }

    #[test]
    fn canonical_edge_order() {
        // Ordering is by edge order first, then by vertex-set value.
        let h = Hypergraph::from_vertex_lists(
            3,
            &[vec![1, 2], vec![2], vec![0, 2], vec![0, 1, 2]],
            Phase::Plus,
        )
        .unwrap();
        assert_eq!(
            h.edge_vertex_lists(),
            vec![vec![2], vec![0, 2], vec![1, 2], vec![0, 1, 2]]
        );
    }

    #[test]
    fn construction_rejects_invalid_edges() {
        assert!(matches!(
            Hypergraph::new(2, vec![0], Phase::Plus),
            Err(HypergraphError::EmptyEdge)
        ));
        assert!(matches!(
            Hypergraph::new(2, vec![0b100], Phase::Plus),
            Err(HypergraphError::EdgeOutOfRange { .. })
        ));
        assert!(matches!(
            Hypergraph::new(2, vec![0b01, 0b01], Phase::Plus),
            Err(HypergraphError::DuplicateEdge(_))
        ));
        assert!(matches!(
            Hypergraph::from_vertex_lists(2, &[vec![0, 0]], Phase::Minus),
            Err(HypergraphError::RepeatedVertex(_))
        ));
        assert!(matches!(
            Hypergraph::from_vertex_lists(2, &[vec![5]], Phase::Plus),
            Err(HypergraphError::VertexOutOfRange { .. })
        ));
    }

    #[test]
    fn m1_hypergraph_is_single_full_edge() {
        let h = grover_m1_hypergraph(4).unwrap();
        assert_eq!(h.edge_vertex_lists(), vec![vec![0, 1, 2, 3]]);
        assert_eq!(h.phase(), Phase::Plus);

        let h1 = grover_m1_hypergraph(1).unwrap();
        assert_eq!(h1.edge_vertex_lists(), vec![vec![0]]);
    }

    #[test]
    fn m1_state_matches_oracle() {
        for n in 1..=8 {
            let h = grover_m1_hypergraph(n).unwrap();
            let expect = StateVector::uniform_superposition(n)
                .unwrap()
                .apply_oracle(&SolutionSet::canonical_m1(n).unwrap())
                .unwrap();
            assert_eq!(h.state_vector(), expect);
        }
    }

    #[test]
    fn m2_examples_from_the_construction() {
        let h = grover_m2_hypergraph(3, 2).unwrap();
        assert_eq!(h.phase(), Phase::Plus);
        assert_eq!(
            h.edge_vertex_lists(),
            vec![vec![2], vec![0, 2], vec![1, 2]]
        );

        let h = grover_m2_hypergraph(2, 2).unwrap();
        assert_eq!(h.phase(), Phase::Minus);
        assert_eq!(h.edge_vertex_lists(), vec![vec![0], vec![1]]);

        // d = n keeps every order up to n-1 and drops the order-n edge.
        let h = grover_m2_hypergraph(4, 4).unwrap();
        assert_eq!(h.phase(), Phase::Minus);
        let orders = h.edge_orders();
        assert_eq!(orders.iter().filter(|&&k| k == 1).count(), 4);
        assert_eq!(orders.iter().filter(|&&k| k == 2).count(), 6);
        assert_eq!(orders.iter().filter(|&&k| k == 3).count(), 4);
        assert!(orders.iter().all(|&k| k < 4));
    }

    #[test]
    fn m2_construction_bounds() {
        assert!(matches!(
            grover_m2_hypergraph(1, 1),
            Err(HypergraphError::TooFewQubits(1))
        ));
        assert!(matches!(
            grover_m2_hypergraph(3, 0),
            Err(HypergraphError::DistanceOutOfRange { .. })
        ));
        assert!(matches!(
            grover_m2_hypergraph(3, 4),
            Err(HypergraphError::DistanceOutOfRange { .. })
        ));
    }

    #[test]
    fn m2_matches_closed_form_and_oracle_state() {
        for n in 2..=9 {
            for d in 1..=n {
                let h = grover_m2_hypergraph(n, d).unwrap();

                let (edges, phase) = closed_form_m2(n, d);
                let expect = Hypergraph::new(n, edges, phase).unwrap();
                assert_eq!(h, expect, "closed form disagrees at n={n}, d={d}");

                let oracle_state = StateVector::uniform_superposition(n)
                    .unwrap()
                    .apply_oracle(&SolutionSet::canonical_m2(n, d).unwrap())
                    .unwrap();
                assert!(
                    h.state_vector().max_abs_diff(&oracle_state).unwrap() < 1e-12,
                    "state mismatch at n={n}, d={d}"
                );

                // The order-n edge never appears for two solutions.
                let full = (1 << n) - 1;
                assert!(!h.edge_masks().contains(&full));
            }
        }
    }

    #[test]
    fn d1_state_factors_into_plus_times_m1() {
        for n in 2..=8 {
            let h = grover_m2_hypergraph(n, 1).unwrap();
            let plus = StateVector::uniform_superposition(1).unwrap();
            let rest = StateVector::uniform_superposition(n - 1)
                .unwrap()
                .apply_oracle(&SolutionSet::canonical_m1(n - 1).unwrap())
                .unwrap();
            let product = plus.tensor(&rest).unwrap();
            assert!(h.state_vector().max_abs_diff(&product).unwrap() < 1e-12);
        }
    }

    #[test]
    fn vertex_permutation_commutes_with_synthesis() {
        let h = grover_m2_hypergraph(4, 2).unwrap();
        let perms = [
            vec![1, 0, 2, 3],
            vec![3, 2, 1, 0],
            vec![1, 2, 3, 0],
            vec![2, 0, 3, 1],
        ];
        for perm in &perms {
            let lhs = h.permute_vertices(perm).unwrap().state_vector();
            let rhs = h.state_vector().permute_qubits(perm).unwrap();
            assert!(lhs.max_abs_diff(&rhs).unwrap() < 1e-12);
        }
    }

    #[test]
    fn json_matches_schema_examples() {
        assert_eq!(
            grover_m1_hypergraph(3).unwrap().to_json(),
            r#"{"n":3,"phase":1,"edges":[[0,1,2]]}"#
        );
        assert_eq!(
            Hypergraph::new(2, vec![], Phase::Plus).unwrap().to_json(),
            r#"{"n":2,"phase":1,"edges":[]}"#
        );
        assert_eq!(
            grover_m2_hypergraph(3, 2).unwrap().to_json(),
            r#"{"n":3,"phase":1,"edges":[[2],[0,2],[1,2]]}"#
        );
    }

    #[test]
    fn json_parse_rejects_bad_documents() {
        assert!(matches!(
            Hypergraph::from_json("{"),
            Err(HypergraphError::Parse { .. })
        ));
        assert!(matches!(
            Hypergraph::from_json(r#"{"n":2,"phase":3,"edges":[]}"#),
            Err(HypergraphError::InvalidPhase(3))
        ));
        assert!(matches!(
            Hypergraph::from_json(r#"{"n":2,"phase":1,"edges":[[0],[0]]}"#),
            Err(HypergraphError::DuplicateEdge(_))
        ));
        assert!(matches!(
            Hypergraph::from_json(r#"{"n":2,"phase":1,"edges":[[2]]}"#),
            Err(HypergraphError::VertexOutOfRange { .. })
        ));
        assert!(matches!(
            Hypergraph::from_json(r#"{"n":0,"phase":1,"edges":[]}"#),
            Err(HypergraphError::VertexCountOutOfRange(0))
        ));
    }

    #[test]
    fn dot_output_shapes() {
        let h = grover_m2_hypergraph(4, 4).unwrap();
        let dot = h.to_dot();
        assert!(dot.starts_with("graph hypergraph {"));
        assert!(dot.contains("label=\"global phase -1\""));
        assert!(dot.contains("style=filled"));
        assert!(dot.contains(" -- "));
        assert!(dot.contains("shape=point"));

        let plain = grover_m1_hypergraph(2).unwrap().to_dot();
        assert!(!plain.contains("global phase"));
    }

    proptest! {
        #[test]
        fn json_roundtrip(n in 1usize..=8, raw_edges: Vec<u8>, minus: bool) {
            let full = (1usize << n) - 1;
            let edges: Vec<usize> = raw_edges
                .iter()
                .map(|&e| e as usize & full)
                .filter(|&e| e != 0)
                .collect();
            let mut dedup = edges.clone();
            dedup.sort_unstable();
            dedup.dedup();
            let phase = if minus { Phase::Minus } else { Phase::Plus };
            let h = Hypergraph::new(n, dedup, phase).unwrap();
            let back = Hypergraph::from_json(&h.to_json()).unwrap();
            prop_assert_eq!(back, h);
        }
    }
}
