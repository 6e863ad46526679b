//! Seeded randomness for reproducible experiments.
//!
//! Every randomized routine takes a 64-bit seed and drives a SplitMix64
//! stream from it. SplitMix64 is splittable: [`SeededRng::split`] derives an
//! independent child stream, so parallel workers can each own one without
//! sharing state.

use rand::{Rng, RngCore, SeedableRng};
use rand_xoshiro::SplitMix64;

#[derive(Debug, Clone)]
pub struct SeededRng {
    inner: SplitMix64,
}

impl SeededRng {
    pub fn new(seed: u64) -> Self {
        SeededRng { inner: SplitMix64::seed_from_u64(seed) }
    }

    /// A child stream seeded from the next output of this one.
    pub fn split(&mut self) -> SeededRng {
        SeededRng::new(self.inner.next_u64())
    }

    /// Uniform integer in `0..bound`.
    pub fn below(&mut self, bound: usize) -> usize {
        self.inner.random_range(0..bound)
    }
}

impl RngCore for SeededRng {
    fn next_u32(&mut self) -> u32 {
        self.inner.next_u32()
    }

    fn next_u64(&mut self) -> u64 {
        self.inner.next_u64()
    }

    fn fill_bytes(&mut self, dst: &mut [u8]) {
        self.inner.fill_bytes(dst)
    }
}
