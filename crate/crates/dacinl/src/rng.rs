//! Deterministic counter-based random streams.
//!
//! Every random quantity in this crate is drawn from a substream keyed by
//! `(seed, index)` or `(seed, major, minor)`. The key is hashed through the
//! SplitMix64 finalizer, so results never depend on evaluation order or on
//! how work is split across threads.

use rand::RngCore;

const GOLDEN: u64 = 0x9E37_79B9_7F4A_7C15;
const INDEX_SALT: u64 = 0x5851_F42D_4C95_7F2D;
const MAJOR_SALT: u64 = 0x2545_F491_4F6C_DD1D;

/// SplitMix64 finalizer: a 64-bit avalanche permutation.
#[inline]
pub fn mix64(mut z: u64) -> u64 {
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// SplitMix64 generator (Steele, Lea & Flood).
///
/// Construction from a key is free, which makes one-generator-per-unit
/// substreams practical.
#[derive(Debug, Clone)]
pub struct SplitMix64 {
    state: u64,
}

impl SplitMix64 {
    pub fn new(seed: u64) -> Self {
        Self { state: seed }
    }
}

impl RngCore for SplitMix64 {
    #[inline]
    fn next_u32(&mut self) -> u32 {
        (self.next_u64() >> 32) as u32
    }

    #[inline]
    fn next_u64(&mut self) -> u64 {
        self.state = self.state.wrapping_add(GOLDEN);
        mix64(self.state)
    }

    fn fill_bytes(&mut self, dest: &mut [u8]) {
        for chunk in dest.chunks_mut(8) {
            let bytes = self.next_u64().to_le_bytes();
            chunk.copy_from_slice(&bytes[..chunk.len()]);
        }
    }
}

/// Derive a child seed, e.g. one seed per Monte Carlo trial.
#[inline]
pub fn derive_seed(seed: u64, index: u64) -> u64 {
    mix64(seed ^ mix64(index.wrapping_mul(GOLDEN) ^ MAJOR_SALT))
}

/// Substream keyed by `(seed, index)`; distinct indices give decorrelated streams.
#[inline]
pub fn substream(seed: u64, index: u64) -> SplitMix64 {
    SplitMix64::new(mix64(seed ^ mix64(index.wrapping_mul(GOLDEN) ^ INDEX_SALT)))
}

/// Substream keyed by `(seed, major, minor)`, e.g. `(run seed, trial, unit)`.
#[inline]
pub fn substream2(seed: u64, major: u64, minor: u64) -> SplitMix64 {
    substream(derive_seed(seed, major), minor)
}
