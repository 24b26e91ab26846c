//! Dense state vectors over the computational basis and the small gate set
//! used by the rest of the crate: phase oracles, C^kZ gates, Pauli-X and
//! qubit permutations.
//!
//! # Conventions
//!
//! Qubit 0 is the **most significant** bit of a basis index, so bit patterns
//! read left to right like kets: for n = 3, ∣110⟩ is index 6. Consequently
//! qubit `i` lives at index bit `n - 1 - i`.
//!
//! Subset bitmasks (gate targets, and the hyperedge/monomial masks built on
//! top of them elsewhere) are expressed in *index-bit* positions: bit `b` of a
//! mask refers to bit `b` of a basis index, i.e. to qubit `n - 1 - b`.

use num_complex::Complex64;
use thiserror::Error;

/// Hard cap on register size; 2^24 complex doubles is 256 MiB.
pub const MAX_QUBITS: usize = 24;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum StateError {
    #[error("qubit count must be in 1..={MAX_QUBITS}, got {0}")]
    QubitCountOutOfRange(usize),
    #[error("qubit index {index} out of range for {n} qubits")]
    QubitIndexOutOfRange { index: usize, n: usize },
    #[error("dimension mismatch: {left}-qubit state vs {right}-qubit operand")]
    DimensionMismatch { left: usize, right: usize },
    #[error("gate mask must be nonempty")]
    EmptyMask,
    #[error("mask {mask:#b} uses bits outside an {n}-qubit register")]
    MaskOutOfRange { mask: usize, n: usize },
    #[error("permutation is not a bijection on 0..{0}")]
    InvalidPermutation(usize),
    #[error("solution set must be nonempty")]
    EmptySolutions,
    #[error("solution index {index} out of range for {n} qubits")]
    SolutionOutOfRange { index: usize, n: usize },
    #[error("amplitude array length {0} is not a power of two in range")]
    BadAmplitudeCount(usize),
    #[error("state has squared norm {norm_sq}, expected 1 within {tol}")]
    NotNormalized { norm_sq: f64, tol: f64 },
}

pub type Result<T> = std::result::Result<T, StateError>;

fn check_qubit_count(n: usize) -> Result<()> {
    if n == 0 || n > MAX_QUBITS {
        return Err(StateError::QubitCountOutOfRange(n));
    }
    Ok(())
}

/// Index bit carrying qubit `qubit` of an `n`-qubit register.
#[inline]
pub(crate) fn qubit_bit(n: usize, qubit: usize) -> usize {
    1 << (n - 1 - qubit)
}

/// A set of marked basis states, sorted and deduplicated.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SolutionSet {
    n: usize,
    solutions: Vec<usize>,
}

impl SolutionSet {
    pub fn new(n: usize, mut solutions: Vec<usize>) -> Result<Self> {
        check_qubit_count(n)?;
        if solutions.is_empty() {
            return Err(StateError::EmptySolutions);
        }
        solutions.sort_unstable();
        solutions.dedup();
        if let Some(&index) = solutions.iter().find(|&&s| s >> n != 0) {
            return Err(StateError::SolutionOutOfRange { index, n });
        }
        Ok(Self { n, solutions })
    }

    /// The single solution ∣1…1⟩, the permutation-invariant M = 1 case.
    pub fn canonical_m1(n: usize) -> Result<Self> {
        Self::new(n, vec![(1 << n) - 1])
    }

    /// The two solutions (∣0…0⟩_d ⊗ ∣1…1⟩_{n−d}, ∣1…1⟩) at Hamming
    /// distance `d`, the partially permutation-invariant M = 2 case.
    pub fn canonical_m2(n: usize, d: usize) -> Result<Self> {
        check_qubit_count(n)?;
        if d == 0 || d > n {
            return Err(StateError::QubitIndexOutOfRange { index: d, n });
        }
        // Qubits d..n-1 occupy the low n-d index bits.
        Self::new(n, vec![(1 << (n - d)) - 1, (1 << n) - 1])
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn solutions(&self) -> &[usize] {
        &self.solutions
    }

    /// Number of marked solutions.
    pub fn len(&self) -> usize {
        self.solutions.len()
    }

    /// Always false; the constructor rejects empty sets.
    pub fn is_empty(&self) -> bool {
        self.solutions.is_empty()
    }
}

/// Dense complex amplitudes over the 2^n computational basis states.
///
/// Values are immutable from the caller's view: every gate returns a fresh
/// vector. All gates in this module are permutations and sign flips, so they
/// preserve the norm exactly.
#[derive(Clone, Debug, PartialEq)]
pub struct StateVector {
    n: usize,
    amps: Vec<Complex64>,
}

impl StateVector {
    /// The equally weighted superposition of all 2^n basis states.
    pub fn uniform_superposition(n: usize) -> Result<Self> {
        check_qubit_count(n)?;
        let dim = 1usize << n;
        let amp = Complex64::new(1.0 / (dim as f64).sqrt(), 0.0);
        Ok(Self {
            n,
            amps: vec![amp; dim],
        })
    }

    /// The basis state ∣x⟩.
    pub fn basis_state(n: usize, x: usize) -> Result<Self> {
        check_qubit_count(n)?;
        if x >> n != 0 {
            return Err(StateError::SolutionOutOfRange { index: x, n });
        }
        let mut amps = vec![Complex64::new(0.0, 0.0); 1 << n];
        amps[x] = Complex64::new(1.0, 0.0);
        Ok(Self { n, amps })
    }

    /// Wrap raw amplitudes; the length must be 2^n for a supported n and the
    /// squared norm must be 1 within `norm_tol`.
    pub fn from_amplitudes(amps: Vec<Complex64>, norm_tol: f64) -> Result<Self> {
        let dim = amps.len();
        if !dim.is_power_of_two() {
            return Err(StateError::BadAmplitudeCount(dim));
        }
        let n = dim.trailing_zeros() as usize;
        check_qubit_count(n).map_err(|_| StateError::BadAmplitudeCount(dim))?;
        let state = Self { n, amps };
        let norm_sq = state.norm_sq();
        if (norm_sq - 1.0).abs() > norm_tol {
            return Err(StateError::NotNormalized { norm_sq, tol: norm_tol });
        }
        Ok(state)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn dim(&self) -> usize {
        self.amps.len()
    }

    pub fn amplitudes(&self) -> &[Complex64] {
        &self.amps
    }

    pub fn amplitude(&self, x: usize) -> Complex64 {
        self.amps[x]
    }

    pub fn norm_sq(&self) -> f64 {
        self.amps.iter().map(|a| a.norm_sqr()).sum()
    }

    /// Phase oracle: negate the amplitude of every solution index.
    pub fn apply_oracle(&self, sols: &SolutionSet) -> Result<Self> {
        if sols.n() != self.n {
            return Err(StateError::DimensionMismatch {
                left: self.n,
                right: sols.n(),
            });
        }
        let mut out = self.clone();
        for &s in sols.solutions() {
            out.amps[s] = -out.amps[s];
        }
        Ok(out)
    }

    /// C^kZ on the index bits of `mask`: negate `amp[x]` iff `x & mask == mask`.
    ///
    /// Order-0 edges are a global phase and are handled by the hypergraph
    /// module; an empty mask is rejected here.
    pub fn apply_ckz(&self, mask: usize) -> Result<Self> {
        if mask == 0 {
            return Err(StateError::EmptyMask);
        }
        if mask >> self.n != 0 {
            return Err(StateError::MaskOutOfRange { mask, n: self.n });
        }
        let mut out = self.clone();
        out.ckz_in_place(mask);
        Ok(out)
    }

    pub(crate) fn ckz_in_place(&mut self, mask: usize) {
        for (x, a) in self.amps.iter_mut().enumerate() {
            if x & mask == mask {
                *a = -*a;
            }
        }
    }

    pub(crate) fn negate_in_place(&mut self) {
        for a in &mut self.amps {
            *a = -*a;
        }
    }

    /// Pauli-X on one qubit: swap amplitudes across that qubit's index bit.
    pub fn apply_pauli_x(&self, qubit: usize) -> Result<Self> {
        if qubit >= self.n {
            return Err(StateError::QubitIndexOutOfRange {
                index: qubit,
                n: self.n,
            });
        }
        let bit = qubit_bit(self.n, qubit);
        let mut out = self.clone();
        for x in 0..self.amps.len() {
            if x & bit == 0 {
                out.amps.swap(x, x | bit);
            }
        }
        Ok(out)
    }

    /// Relabel qubits: qubit `i` of the input becomes qubit `perm[i]` of the
    /// output.
    pub fn permute_qubits(&self, perm: &[usize]) -> Result<Self> {
        let n = self.n;
        if perm.len() != n {
            return Err(StateError::InvalidPermutation(n));
        }
        let mut seen = vec![false; n];
        for &p in perm {
            if p >= n || seen[p] {
                return Err(StateError::InvalidPermutation(n));
            }
            seen[p] = true;
        }
        let mut amps = vec![Complex64::new(0.0, 0.0); self.amps.len()];
        for (x, &a) in self.amps.iter().enumerate() {
            let mut y = 0usize;
            for (i, &p) in perm.iter().enumerate() {
                if x & qubit_bit(n, i) != 0 {
                    y |= qubit_bit(n, p);
                }
            }
            amps[y] = a;
        }
        Ok(Self { n, amps })
    }

    /// ⟨self∣other⟩ = Σ `conj(self[x])·other[x]`.
    pub fn inner_product(&self, other: &Self) -> Result<Complex64> {
        if self.n != other.n {
            return Err(StateError::DimensionMismatch {
                left: self.n,
                right: other.n,
            });
        }
        Ok(self
            .amps
            .iter()
            .zip(&other.amps)
            .map(|(a, b)| a.conj() * b)
            .sum())
    }

    /// Tensor product with `self`'s qubits first (most significant).
    pub fn tensor(&self, other: &Self) -> Result<Self> {
        let n = self.n + other.n;
        check_qubit_count(n)?;
        let mut amps = Vec::with_capacity(1 << n);
        for &a in &self.amps {
            for &b in &other.amps {
                amps.push(a * b);
            }
        }
        Ok(Self { n, amps })
    }

    /// Total probability of observing any of the given solutions.
    pub fn success_probability(&self, sols: &SolutionSet) -> Result<f64> {
        if sols.n() != self.n {
            return Err(StateError::DimensionMismatch {
                left: self.n,
                right: sols.n(),
            });
        }
        Ok(sols
            .solutions()
            .iter()
            .map(|&s| self.amps[s].norm_sqr())
            .sum())
    }

    /// Largest amplitude-wise absolute difference.
    pub fn max_abs_diff(&self, other: &Self) -> Result<f64> {
        if self.n != other.n {
            return Err(StateError::DimensionMismatch {
                left: self.n,
                right: other.n,
            });
        }
        Ok(self
            .amps
            .iter()
            .zip(&other.amps)
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn assert_close(a: f64, b: f64, tol: f64) {
        assert!((a - b).abs() <= tol, "{a} vs {b}");
    }

    fn re(state: &StateVector) -> Vec<f64> {
        state.amplitudes().iter().map(|a| a.re).collect()
    }

    #[test]
    fn uniform_superposition_small_cases() {
        let s1 = StateVector::uniform_superposition(1).unwrap();
        let r = 1.0 / 2f64.sqrt();
        assert_close(s1.amplitude(0).re, r, 1e-15);
        assert_close(s1.amplitude(1).re, r, 1e-15);

        let s2 = StateVector::uniform_superposition(2).unwrap();
        for x in 0..4 {
            assert_close(s2.amplitude(x).re, 0.5, 1e-15);
            assert_close(s2.amplitude(x).im, 0.0, 1e-15);
        }

        let s3 = StateVector::uniform_superposition(3).unwrap();
        assert_close(s3.norm_sq(), 1.0, 1e-12);
        for x in 1..8 {
            assert_eq!(s3.amplitude(x), s3.amplitude(0));
        }
    }

    #[test]
    fn uniform_superposition_rejects_bad_counts() {
        assert!(matches!(
            StateVector::uniform_superposition(0),
            Err(StateError::QubitCountOutOfRange(0))
        ));
        assert!(StateVector::uniform_superposition(MAX_QUBITS + 1).is_err());
    }

    #[test]
    fn oracle_flips_solutions() {
        let psi0 = StateVector::uniform_superposition(2).unwrap();
        let sols = SolutionSet::new(2, vec![3]).unwrap();
        let psi = psi0.apply_oracle(&sols).unwrap();
        assert_eq!(re(&psi), vec![0.5, 0.5, 0.5, -0.5]);

        let sols2 = SolutionSet::new(2, vec![0, 3]).unwrap();
        let psi2 = psi0.apply_oracle(&sols2).unwrap();
        assert_eq!(re(&psi2), vec![-0.5, 0.5, 0.5, -0.5]);
    }

    #[test]
    fn oracle_is_an_involution() {
        let psi0 = StateVector::uniform_superposition(3).unwrap();
        let sols = SolutionSet::new(3, vec![1, 4, 6]).unwrap();
        let twice = psi0
            .apply_oracle(&sols)
            .unwrap()
            .apply_oracle(&sols)
            .unwrap();
        // Sign flips are exact; demand bitwise equality.
        assert_eq!(twice, psi0);
    }

    #[test]
    fn oracle_sign_difference_counts_solutions() {
        let psi0 = StateVector::uniform_superposition(4).unwrap();
        let sols = SolutionSet::new(4, vec![0, 3, 9, 15]).unwrap();
        let psi = psi0.apply_oracle(&sols).unwrap();
        let flipped = psi0
            .amplitudes()
            .iter()
            .zip(psi.amplitudes())
            .filter(|(a, b)| *a != *b)
            .count();
        assert_eq!(flipped, sols.len());
    }

    #[test]
    fn oracle_dimension_mismatch() {
        let psi0 = StateVector::uniform_superposition(2).unwrap();
        let sols = SolutionSet::new(3, vec![1]).unwrap();
        assert!(matches!(
            psi0.apply_oracle(&sols),
            Err(StateError::DimensionMismatch { .. })
        ));
    }

    #[test]
    fn ckz_full_mask_flips_all_ones() {
        let psi0 = StateVector::uniform_superposition(2).unwrap();
        let psi = psi0.apply_ckz(0b11).unwrap();
        assert_eq!(re(&psi), vec![0.5, 0.5, 0.5, -0.5]);
    }

    #[test]
    fn ckz_order_one_is_local_z() {
        let psi0 = StateVector::uniform_superposition(3).unwrap();
        for b in 0..3 {
            let mask = 1 << b;
            let psi = psi0.apply_ckz(mask).unwrap();
            for x in 0..8 {
                let expect = if x & mask != 0 { -0.125f64.sqrt() } else { 0.125f64.sqrt() };
                assert_close(psi.amplitude(x).re, expect, 1e-15);
            }
        }
    }

    #[test]
    fn ckz_involution_and_commutation() {
        let psi0 = StateVector::uniform_superposition(3).unwrap();
        let state = psi0.apply_oracle(&SolutionSet::new(3, vec![2, 5]).unwrap()).unwrap();
        for mask in 1..8usize {
            let twice = state.apply_ckz(mask).unwrap().apply_ckz(mask).unwrap();
            assert_eq!(twice, state);
            for other in 1..8usize {
                let ab = state.apply_ckz(mask).unwrap().apply_ckz(other).unwrap();
                let ba = state.apply_ckz(other).unwrap().apply_ckz(mask).unwrap();
                assert_eq!(ab, ba);
            }
        }
    }

    #[test]
    fn ckz_rejects_bad_masks() {
        let psi0 = StateVector::uniform_superposition(2).unwrap();
        assert!(matches!(psi0.apply_ckz(0), Err(StateError::EmptyMask)));
        assert!(matches!(
            psi0.apply_ckz(0b100),
            Err(StateError::MaskOutOfRange { .. })
        ));
    }

    #[test]
    fn pauli_x_moves_basis_states() {
        // ∣111⟩ --X on qubit 0--> ∣011⟩, i.e. index 7 -> index 3.
        let s = StateVector::basis_state(3, 7).unwrap();
        let moved = s.apply_pauli_x(0).unwrap();
        assert_eq!(moved, StateVector::basis_state(3, 3).unwrap());

        let back = moved.apply_pauli_x(0).unwrap();
        assert_eq!(back, s);

        let psi0 = StateVector::uniform_superposition(3).unwrap();
        assert_eq!(psi0.apply_pauli_x(1).unwrap(), psi0);
    }

    #[test]
    fn permute_qubits_relabels_bits() {
        let s = StateVector::basis_state(3, 0b011).unwrap();
        let swapped = s.permute_qubits(&[2, 1, 0]).unwrap();
        assert_eq!(swapped, StateVector::basis_state(3, 0b110).unwrap());

        let id = s.permute_qubits(&[0, 1, 2]).unwrap();
        assert_eq!(id, s);

        // A 3-cycle composed with its inverse is the identity.
        let perm = [1usize, 2, 0];
        let inv = [2usize, 0, 1];
        let roundtrip = s.permute_qubits(&perm).unwrap().permute_qubits(&inv).unwrap();
        assert_eq!(roundtrip, s);

        assert!(s.permute_qubits(&[0, 0, 1]).is_err());
        assert!(s.permute_qubits(&[0, 1]).is_err());
    }

    #[test]
    fn inner_product_values() {
        let psi0 = StateVector::uniform_superposition(4).unwrap();
        let one = psi0.inner_product(&psi0).unwrap();
        assert_close(one.re, 1.0, 1e-12);
        assert_close(one.im, 0.0, 1e-12);

        // <psi0|psi_{M=1}> = 1 - 2/2^n, checked against an explicit
        // amplitude-by-amplitude sum.
        for n in 1..=8 {
            let psi0 = StateVector::uniform_superposition(n).unwrap();
            let psi = psi0
                .apply_oracle(&SolutionSet::canonical_m1(n).unwrap())
                .unwrap();
            let mut direct = Complex64::new(0.0, 0.0);
            for x in 0..psi.dim() {
                direct += psi0.amplitude(x).conj() * psi.amplitude(x);
            }
            let expect = 1.0 - 2.0 / (1u64 << n) as f64;
            assert_close(direct.re, expect, 1e-12);
            let ip = psi0.inner_product(&psi).unwrap();
            assert_close(ip.re, expect, 1e-12);
            assert_close(ip.im, 0.0, 1e-12);
        }

        let a = StateVector::basis_state(2, 1).unwrap();
        let b = StateVector::basis_state(2, 2).unwrap();
        assert_eq!(a.inner_product(&b).unwrap(), Complex64::new(0.0, 0.0));
    }

    #[test]
    fn gates_preserve_norm() {
        let sols = SolutionSet::new(3, vec![1, 6]).unwrap();
        let state = StateVector::uniform_superposition(3)
            .unwrap()
            .apply_oracle(&sols)
            .unwrap()
            .apply_ckz(0b101)
            .unwrap()
            .apply_pauli_x(2)
            .unwrap()
            .permute_qubits(&[1, 0, 2])
            .unwrap();
        assert_close(state.norm_sq(), 1.0, 1e-12);
    }

    #[test]
    fn tensor_product_layout() {
        // ∣01⟩ ⊗ ∣1⟩ = ∣011⟩
        let a = StateVector::basis_state(2, 0b01).unwrap();
        let b = StateVector::basis_state(1, 1).unwrap();
        let ab = a.tensor(&b).unwrap();
        assert_eq!(ab, StateVector::basis_state(3, 0b011).unwrap());
    }

    #[test]
    fn solution_set_canonical_forms() {
        let m1 = SolutionSet::canonical_m1(4).unwrap();
        assert_eq!(m1.solutions(), &[15]);

        let m2 = SolutionSet::canonical_m2(3, 2).unwrap();
        assert_eq!(m2.solutions(), &[1, 7]);

        let m2_full = SolutionSet::canonical_m2(3, 3).unwrap();
        assert_eq!(m2_full.solutions(), &[0, 7]);

        assert!(SolutionSet::canonical_m2(3, 0).is_err());
        assert!(SolutionSet::canonical_m2(3, 4).is_err());
    }

    #[test]
    fn solution_set_sorts_and_validates() {
        let s = SolutionSet::new(3, vec![6, 1, 6, 3]).unwrap();
        assert_eq!(s.solutions(), &[1, 3, 6]);
        assert!(SolutionSet::new(3, vec![]).is_err());
        assert!(SolutionSet::new(3, vec![8]).is_err());
    }

    #[test]
    fn from_amplitudes_validates_norm() {
        let amps = vec![Complex64::new(0.6, 0.0), Complex64::new(0.8, 0.0)];
        assert!(StateVector::from_amplitudes(amps, 1e-9).is_ok());
        let bad = vec![Complex64::new(0.6, 0.0), Complex64::new(0.7, 0.0)];
        assert!(matches!(
            StateVector::from_amplitudes(bad, 1e-9),
            Err(StateError::NotNormalized { .. })
        ));
        let odd = vec![Complex64::new(1.0, 0.0); 3];
        assert!(matches!(
            StateVector::from_amplitudes(odd, 1e-9),
            Err(StateError::BadAmplitudeCount(3))
        ));
    }
}
