//! Seeded generator used by every sampler: SplitMix64, identical streams on all platforms.

use rand::SeedableRng;
pub use rand_xoshiro::SplitMix64 as Rng64;

pub const DEFAULT_SEED: u64 = 0x5EED_A857;

pub fn seeded(seed: u64) -> Rng64 {
    Rng64::seed_from_u64(seed)
}

/// Derives an independent stream for a labelled sub-task.
pub fn derive(seed: u64, salt: u64) -> Rng64 {
    seeded(seed ^ salt.wrapping_mul(0x9E37_79B9_7F4A_7C15))
}
