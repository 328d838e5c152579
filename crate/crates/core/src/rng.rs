//! Seedable random stream with label-based splitting.

use rand::{RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Deterministic pseudo-random stream.
///
/// `split` derives a child stream from this stream's seed and a label, not
/// from its current state, so children are independent of how many draws
/// the parent has made. That is what lets offspring be generated in any
/// thread order.
#[derive(Debug, Clone)]
pub struct RandomStream {
    seed: u64,
    rng: ChaCha8Rng,
}

impl RandomStream {
    pub fn new(seed: u64) -> Self {
        RandomStream {
            seed,
            rng: ChaCha8Rng::seed_from_u64(seed),
        }
    }

    pub fn seed(&self) -> u64 {
        self.seed
    }

    /// Child stream for `label`.
    pub fn split(&self, label: u64) -> RandomStream {
        RandomStream::new(derive_seed(self.seed, label))
    }

    /// Child stream for a path of labels, e.g. `(generation, slot)`.
    pub fn split_path(&self, labels: &[u64]) -> RandomStream {
        let seed = labels.iter().fold(self.seed, |s, &l| derive_seed(s, l));
        RandomStream::new(seed)
    }
}

/// Mixes a label into a seed (splitmix64 finalizer on both halves).
pub fn derive_seed(seed: u64, label: u64) -> u64 {
    mix64(seed ^ mix64(label.wrapping_add(0x9E37_79B9_7F4A_7C15)))
}

fn mix64(mut z: u64) -> u64 {
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

impl RngCore for RandomStream {
    fn next_u32(&mut self) -> u32 {
        self.rng.next_u32()
    }

    fn next_u64(&mut self) -> u64 {
        self.rng.next_u64()
    }

    fn fill_bytes(&mut self, dst: &mut [u8]) {
        self.rng.fill_bytes(dst)
    }
}
