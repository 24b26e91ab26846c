//! Boolean-function machinery behind the correspondence between real equally
//! weighted states and hypergraph states: truth tables, the GF(2) Möbius
//! (algebraic normal form) transform, and the conversions in both directions.
//!
//! A truth table is indexed by basis indices, so monomial masks come out in
//! index-bit positions; see the conventions note in [`crate::state`].

use num_complex::Complex64;

use crate::hypergraph::{Hypergraph, Phase};
use crate::state::{Result as StateResult, SolutionSet, StateVector};

/// Truth table of f: {0,1}^n → {0,1}, entry `x` holding f(x).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BooleanFunction {
    n: usize,
    table: Vec<bool>,
}

impl BooleanFunction {
    /// Build from a raw table; the length must be 2^n.
    pub fn new(n: usize, table: Vec<bool>) -> Self {
        assert_eq!(table.len(), 1 << n, "truth table must have 2^n entries");
        Self { n, table }
    }

    pub fn constant_zero(n: usize) -> Self {
        Self::new(n, vec![false; 1 << n])
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn table(&self) -> &[bool] {
        &self.table
    }

    pub fn eval(&self, x: usize) -> bool {
        self.table[x]
    }

    /// Number of inputs mapped to 1.
    pub fn weight(&self) -> usize {
        self.table.iter().filter(|&&b| b).count()
    }
}

/// Algebraic normal form: the set of monomials with coefficient 1.
///
/// Monomial masks are index-bit subsets; the empty mask is the constant-1
/// term. Masks are kept sorted ascending for canonical equality.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Anf {
    n: usize,
    monomials: Vec<usize>,
}

impl Anf {
    pub fn new(n: usize, mut monomials: Vec<usize>) -> Self {
        monomials.sort_unstable();
        monomials.dedup();
        assert!(
            monomials.last().is_none_or(|&m| m >> n == 0),
            "monomial mask outside the {n}-bit register"
        );
        Self { n, monomials }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn monomials(&self) -> &[usize] {
        &self.monomials
    }

    pub fn contains_constant_term(&self) -> bool {
        self.monomials.first() == Some(&0)
    }
}

/// Indicator function of a solution set: f(x) = 1 iff x is a solution.
pub fn function_from_solutions(sols: &SolutionSet) -> BooleanFunction {
    let mut table = vec![false; 1 << sols.n()];
    for &s in sols.solutions() {
        table[s] = true;
    }
    BooleanFunction::new(sols.n(), table)
}

/// GF(2) Möbius transform: truth table → ANF coefficients.
///
/// Runs the in-place butterfly, n·2^(n-1) XORs total. The coefficient at
/// mask S is a_S = ⊕_{T ⊆ S} f(T); the transform is its own inverse.
pub fn mobius_transform(f: &BooleanFunction) -> Anf {
    let mut t = f.table().to_vec();
    butterfly(&mut t);
    let monomials = t
        .iter()
        .enumerate()
        .filter_map(|(mask, &a)| a.then_some(mask))
        .collect();
    Anf {
        n: f.n(),
        monomials,
    }
}

/// Inverse transform: ANF → truth table. Same butterfly, by involution.
pub fn anf_to_function(anf: &Anf) -> BooleanFunction {
    let mut t = vec![false; 1 << anf.n()];
    for &m in anf.monomials() {
        t[m] = true;
    }
    butterfly(&mut t);
    BooleanFunction::new(anf.n(), t)
}

fn butterfly(t: &mut [bool]) {
    let len = t.len();
    let mut step = 1;
    while step < len {
        for block in t.chunks_exact_mut(step * 2) {
            let (zeros, ones) = block.split_at_mut(step);
            for (z, o) in zeros.iter().zip(ones.iter_mut()) {
                *o ^= *z;
            }
        }
        step <<= 1;
    }
}

/// Read an ANF as a hypergraph: nonempty monomials become hyperedges and the
/// constant term becomes a global −1 phase.
pub fn anf_to_hypergraph(anf: &Anf) -> Hypergraph {
    let phase = if anf.contains_constant_term() {
        Phase::Minus
    } else {
        Phase::Plus
    };
    let edges: Vec<usize> = anf.monomials().iter().copied().filter(|&m| m != 0).collect();
    Hypergraph::new(anf.n(), edges, phase)
        .expect("ANF monomials are valid, deduplicated edge masks")
}

/// The real equally weighted state with amplitude (−1)^{f(x)} / √(2^n).
pub fn rew_from_function(f: &BooleanFunction) -> StateResult<StateVector> {
    let n = f.n();
    let dim = 1usize << n;
    let r = 1.0 / (dim as f64).sqrt();
    let amps = (0..dim)
        .map(|x| Complex64::new(if f.eval(x) { -r } else { r }, 0.0))
        .collect();
    StateVector::from_amplitudes(amps, 1e-12)
}
