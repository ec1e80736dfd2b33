//! Deterministic randomness.
//!
//! Every trial owns exactly one [`TrialRng`] and all random decisions of the
//! trial (mutators, offsets, scheduling, strategy) are drawn from it, so a
//! `(config, seed)` pair replays bit-identically. Mutators draw exclusively
//! through [`Rand::below`], which lets tests force exact outcomes with a
//! [`ScriptedRand`].

use rand_chacha::ChaCha8Rng;
use rand_core::{RngCore, SeedableRng};

/// The draw interface used throughout the crate.
pub trait Rand {
    fn next_u64(&mut self) -> u64;

    /// Uniform draw in `[0, bound)`; `bound` must be nonzero.
    fn below(&mut self, bound: u64) -> u64 {
        debug_assert!(bound > 0, "below(0)");
        // Multiply-shift keeps the mapping unbiased to ~2^-64.
        ((u128::from(self.next_u64()) * u128::from(bound)) >> 64) as u64
    }

    /// Uniform index into a collection of `len` elements.
    fn index(&mut self, len: usize) -> usize {
        self.below(len as u64) as usize
    }

    /// Uniform `f64` in `[0, 1)`.
    fn unit(&mut self) -> f64 {
        (self.next_u64() >> 11) as f64 * (1.0 / (1u64 << 53) as f64)
    }
}

/// ChaCha-backed stream; the production RNG.
pub struct TrialRng(ChaCha8Rng);

impl TrialRng {
    pub fn seeded(seed: u64) -> Self {
        Self(ChaCha8Rng::seed_from_u64(seed))
    }
}

impl Rand for TrialRng {
    fn next_u64(&mut self) -> u64 {
        self.0.next_u64()
    }
}

/// Replays a scripted list of draw results.
///
/// `below` pops the next scripted value verbatim (it must already be in
/// range), which is how the mutator conformance tests force offsets,
/// deltas, and indices byte-exactly.
pub struct ScriptedRand {
    values: std::collections::VecDeque<u64>,
}

impl ScriptedRand {
    pub fn new(values: &[u64]) -> Self {
        Self {
            values: values.iter().copied().collect(),
        }
    }

    pub fn exhausted(&self) -> bool {
        self.values.is_empty()
    }
}

impl Rand for ScriptedRand {
    fn next_u64(&mut self) -> u64 {
        self.values.pop_front().expect("script exhausted")
    }

    fn below(&mut self, bound: u64) -> u64 {
        let v = self.next_u64();
        assert!(v < bound, "scripted value {v} out of range 0..{bound}");
        v
    }

    fn unit(&mut self) -> f64 {
        self.next_u64() as f64 / (1u64 << 53) as f64
    }
}

/// Samples an index from a (not necessarily normalized) weight vector.
///
/// Weights must be nonnegative with a positive sum.
pub fn sample_weighted(weights: &[f64], rng: &mut dyn Rand) -> usize {
    let total: f64 = weights.iter().sum();
    debug_assert!(total > 0.0, "sample_weighted with zero mass");
    let u = rng.unit() * total;
    let mut acc = 0.0;
    let mut last_positive = 0;
    for (i, &w) in weights.iter().enumerate() {
        if w > 0.0 {
            acc += w;
            last_positive = i;
            if u < acc {
                return i;
            }
        }
    }
    // Floating-point slack at the top of the range falls through to the
    // last positive-weight entry.
    last_positive
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn below_stays_in_range() {
        let mut rng = TrialRng::seeded(7);
        for bound in [1u64, 2, 3, 15, 32, 1000] {
            for _ in 0..2000 {
                assert!(rng.below(bound) < bound);
            }
        }
    }

    #[test]
    fn same_seed_same_stream() {
        let mut a = TrialRng::seeded(42);
        let mut b = TrialRng::seeded(42);
        let xs: Vec<u64> = (0..64).map(|_| a.next_u64()).collect();
        let ys: Vec<u64> = (0..64).map(|_| b.next_u64()).collect();
        assert_eq!(xs, ys);
    }

    #[test]
    fn scripted_returns_verbatim() {
        let mut rng = ScriptedRand::new(&[3, 0, 7]);
        assert_eq!(rng.below(10), 3);
        assert_eq!(rng.below(1), 0);
        assert_eq!(rng.below(8), 7);
        assert!(rng.exhausted());
    }

    #[test]
    fn weighted_sampling_degenerate_mass() {
        let mut rng = TrialRng::seeded(1);
        let w = [0.0, 0.0, 5.0, 0.0];
        for _ in 0..100 {
            assert_eq!(sample_weighted(&w, &mut rng), 2);
        }
    }

    #[test]
    fn weighted_sampling_matches_ratios() {
        let mut rng = TrialRng::seeded(11);
        let w = [1.0, 3.0];
        let mut hits = [0u32; 2];
        let n = 100_000;
        for _ in 0..n {
            hits[sample_weighted(&w, &mut rng)] += 1;
        }
        let p1 = f64::from(hits[1]) / f64::from(n);
        assert!((p1 - 0.75).abs() < 0.01, "p1 = {p1}");
    }
}
