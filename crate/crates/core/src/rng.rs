// SPDX-License-Identifier: Apache-2.0

//! Seeded randomness.
//!
//! Every randomized routine in this crate draws from [`SeededRng`], which is
//! ChaCha8 keyed by `seed_from_u64`. Results are reproducible from the
//! recorded 64-bit seed across platforms and releases of this crate.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

pub type SeededRng = ChaCha8Rng;

pub fn seeded(seed: u64) -> SeededRng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Derives the seed of the `index`-th independent sub-run from a base seed
/// (splitmix64 finalizer).
pub fn derive_seed(base: u64, index: u64) -> u64 {
    let mut z = base ^ index.wrapping_add(1).wrapping_mul(0x9E37_79B9_7F4A_7C15);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}
