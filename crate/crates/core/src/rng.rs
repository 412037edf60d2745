//! Seeded, reproducible random streams.
//!
//! Every random choice in the crate flows from a single `u64` seed. Child
//! streams for independent consumers are derived by label and index, so
//! adding draws to one consumer never perturbs another.

use rand::{Rng, RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Named consumers of randomness.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
#[repr(u64)]
pub enum StreamLabel {
    Generator = 1,
    Solver = 2,
    MonteCarlo = 3,
    Sampling = 4,
    Suite = 5,
}

pub struct RngStream {
    seed: u64,
    rng: ChaCha8Rng,
}

impl RngStream {
    pub fn new(seed: u64) -> Self {
        RngStream {
            seed,
            rng: ChaCha8Rng::seed_from_u64(seed),
        }
    }

    pub fn seed(&self) -> u64 {
        self.seed
    }

    /// Seed of the `index`-th child stream for `label`. Pure function of `(seed, label, index)`.
    pub fn derive_seed(seed: u64, label: StreamLabel, index: u64) -> u64 {
        debug_assert!(index < 1 << 48);
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        rng.set_stream(((label as u64) << 48) | index);
        rng.next_u64()
    }

    pub fn child(&self, label: StreamLabel, index: u64) -> RngStream {
        RngStream::new(Self::derive_seed(self.seed, label, index))
    }

    /// Uniform draw in `[0, 1)`.
    pub fn uniform(&mut self) -> f64 {
        self.rng.gen::<f64>()
    }

    /// Uniform draw in the closed range `[lo, hi]`.
    pub fn uniform_in(&mut self, lo: f64, hi: f64) -> f64 {
        if lo == hi {
            lo
        } else {
            self.rng.gen_range(lo..=hi)
        }
    }

    pub fn int_in(&mut self, lo: u64, hi: u64) -> u64 {
        self.rng.gen_range(lo..=hi)
    }

    pub fn bernoulli(&mut self, p: f64) -> bool {
        self.uniform() < p
    }
}
