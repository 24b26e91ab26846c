//! Deterministic multi-start maximization over an axis-aligned box.
//!
//! Starts come from a Halton low-discrepancy sequence plus a seeded ChaCha
//! stream; each start is refined by coordinate-wise golden-section sweeps
//! with a shrinking trust interval. Everything is pure arithmetic given the
//! seed, so identical inputs reproduce bitwise-identical results.

use rand_chacha::ChaCha8Rng;
use rand_core::{RngCore, SeedableRng};

const PRIMES: [usize; 16] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47, 53];

/// Values closer than this are treated as ties and broken by picking the
/// lexicographically smallest coordinate vector.
const TIE_EPS: f64 = 1e-12;

pub(crate) struct MultiStartOutcome {
    pub x: Vec<f64>,
    pub value: f64,
    /// Final trust-interval half-width of the winning start.
    pub residual: f64,
    /// Refined objective value of every start, in start order.
    pub start_values: Vec<f64>,
}

/// Radical-inverse Halton point, `index` starting at 1.
fn halton(mut index: usize, base: usize) -> f64 {
    let mut f = 1.0;
    let mut r = 0.0;
    while index > 0 {
        f /= base as f64;
        r += f * (index % base) as f64;
        index /= base;
    }
    r
}

fn unit_from_u64(bits: u64) -> f64 {
    (bits >> 11) as f64 / (1u64 << 53) as f64
}

/// Golden-section maximization of `f` on `[a, b]` down to bracket width
/// `tol`. Returns the best abscissa and value seen.
fn golden_section_max(f: &mut impl FnMut(f64) -> f64, mut a: f64, mut b: f64, tol: f64) -> (f64, f64) {
    const INV_PHI: f64 = 0.618_033_988_749_894_9;
    let mut x1 = b - INV_PHI * (b - a);
    let mut x2 = a + INV_PHI * (b - a);
    let mut f1 = f(x1);
    let mut f2 = f(x2);
    while b - a > tol {
        if f1 >= f2 {
            b = x2;
            x2 = x1;
            f2 = f1;
            x1 = b - INV_PHI * (b - a);
            f1 = f(x1);
        } else {
            a = x1;
            x1 = x2;
            f1 = f2;
            x2 = a + INV_PHI * (b - a);
            f2 = f(x2);
        }
    }
    if f1 >= f2 {
        (x1, f1)
    } else {
        (x2, f2)
    }
}

/// Coordinate-wise golden-section ascent from `x`, trust interval halving
/// whenever a full sweep fails to improve. Stops once the interval drops
/// below `step_tol` or after `max_sweeps` sweeps. Returns the final value
/// and the final interval width.
pub(crate) fn refine(
    f: &mut impl FnMut(&[f64]) -> f64,
    x: &mut [f64],
    bounds: &[(f64, f64)],
    step_tol: f64,
    max_sweeps: usize,
) -> (f64, f64) {
    let widest = bounds
        .iter()
        .map(|(lo, hi)| hi - lo)
        .fold(0.0f64, f64::max);
    let mut best = f(x);
    // Fraction of each coordinate's range used as the local search bracket.
    let mut h = 0.125f64;
    for _ in 0..max_sweeps {
        if h * widest < step_tol {
            break;
        }
        let mut improved = false;
        for j in 0..x.len() {
            let (lo, hi) = bounds[j];
            let half = h * (hi - lo);
            let a = (x[j] - half).max(lo);
            let b = (x[j] + half).min(hi);
            if b <= a {
                continue;
            }
            let saved = x[j];
            let tol = (half * 1e-6).max(1e-15);
            let (xj, fj) = golden_section_max(
                &mut |v| {
                    x[j] = v;
                    f(x)
                },
                a,
                b,
                tol,
            );
            if fj > best {
                best = fj;
                x[j] = xj;
                improved = true;
            } else {
                x[j] = saved;
            }
        }
        if !improved {
            h *= 0.5;
        }
    }
    (best, h * widest)
}

/// Multi-start maximization: `grid_starts` Halton points followed by
/// `random_starts` seeded draws, each refined with [`refine`]. The reduction
/// over starts is ordered by start index; near-equal maxima are resolved
/// toward the lexicographically smallest coordinates.
pub(crate) fn multistart_max(
    f: &mut impl FnMut(&[f64]) -> f64,
    bounds: &[(f64, f64)],
    grid_starts: usize,
    random_starts: usize,
    seed: u64,
    step_tol: f64,
    max_sweeps: usize,
) -> MultiStartOutcome {
    let dims = bounds.len();
    assert!(dims <= PRIMES.len(), "too many dimensions for the Halton bases");

    let mut starts: Vec<Vec<f64>> = Vec::with_capacity(grid_starts + random_starts);
    for s in 0..grid_starts {
        starts.push(
            (0..dims)
                .map(|j| {
                    let (lo, hi) = bounds[j];
                    lo + halton(s + 1, PRIMES[j]) * (hi - lo)
                })
                .collect(),
        );
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..random_starts {
        starts.push(
            (0..dims)
                .map(|j| {
                    let (lo, hi) = bounds[j];
                    lo + unit_from_u64(rng.next_u64()) * (hi - lo)
                })
                .collect(),
        );
    }

    let mut best_x: Option<Vec<f64>> = None;
    let mut best_value = f64::NEG_INFINITY;
    let mut best_residual = 0.0;
    let mut start_values = Vec::with_capacity(starts.len());
    for mut x in starts {
        let (value, residual) = refine(f, &mut x, bounds, step_tol, max_sweeps);
        start_values.push(value);
        let take = match &best_x {
            None => true,
            Some(bx) => {
                value > best_value + TIE_EPS
                    || (value > best_value - TIE_EPS && lex_less(&x, bx))
            }
        };
        if take {
            best_x = Some(x);
            best_value = value;
            best_residual = residual;
        }
    }
    MultiStartOutcome {
        x: best_x.expect("at least one start"),
        value: best_value,
        residual: best_residual,
        start_values,
    }
}

fn lex_less(a: &[f64], b: &[f64]) -> bool {
    for (x, y) in a.iter().zip(b) {
        if x < y {
            return true;
        }
        if x > y {
            return false;
        }
    }
    false
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn golden_section_finds_parabola_peak() {
        let mut f = |x: f64| -(x - 0.3).powi(2);
        let (x, v) = golden_section_max(&mut f, 0.0, 1.0, 1e-12);
        assert!((x - 0.3).abs() < 1e-9);
        assert!(v.abs() < 1e-15);
    }

    #[test]
    fn halton_is_in_unit_interval_and_low_discrepancy_ish() {
        for i in 1..200 {
            for &b in &PRIMES[..4] {
                let v = halton(i, b);
                assert!((0.0..1.0).contains(&v));
            }
        }
        assert_eq!(halton(1, 2), 0.5);
        assert_eq!(halton(2, 2), 0.25);
        assert_eq!(halton(3, 2), 0.75);
    }

    #[test]
    fn multistart_recovers_known_maximum() {
        // f(x, y) = cos(x - 1) * cos(y - 2), max 1 at (1, 2).
        let mut f = |x: &[f64]| (x[0] - 1.0).cos() * (x[1] - 2.0).cos();
        let out = multistart_max(
            &mut f,
            &[(0.0, std::f64::consts::PI), (0.0, std::f64::consts::TAU)],
            8,
            8,
            0x5EED,
            1e-12,
            500,
        );
        assert!((out.value - 1.0).abs() < 1e-10);
        assert!((out.x[0] - 1.0).abs() < 1e-6);
        assert!((out.x[1] - 2.0).abs() < 1e-6);
        assert_eq!(out.start_values.len(), 16);
    }

    #[test]
    fn multistart_is_deterministic() {
        let run = || {
            let mut f =
                |x: &[f64]| -(x[0] - 0.7).powi(2) - (x[1] - 1.3).powi(2) + (3.0 * x[0]).sin() * 0.05;
            multistart_max(&mut f, &[(0.0, 2.0), (0.0, 2.0)], 16, 16, 42, 1e-12, 500)
        };
        let a = run();
        let b = run();
        assert_eq!(a.value.to_bits(), b.value.to_bits());
        assert_eq!(a.x.len(), b.x.len());
        for (p, q) in a.x.iter().zip(&b.x) {
            assert_eq!(p.to_bits(), q.to_bits());
        }
    }
}
