//! Deterministic per-sample random generators.
//!
//! Every sample gets its own ChaCha8 stream derived from
//! `(master seed, suite salt, sample index)` through a splitmix avalanche,
//! so results are independent of thread scheduling and of the order in which
//! suites appear in a run configuration.

use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

/// splitmix64 finalizer: a cheap, well-mixed 64-bit avalanche.
pub fn splitmix64(mut x: u64) -> u64 {
    x = x.wrapping_add(0x9E37_79B9_7F4A_7C15);
    x = (x ^ (x >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    x = (x ^ (x >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    x ^ (x >> 31)
}

/// The RNG for sample `index` of the suite salted with `suite`.
pub fn sample_rng(seed: u64, suite: u64, index: u64) -> ChaCha8Rng {
    let s = splitmix64(splitmix64(seed ^ splitmix64(suite)) ^ index);
    ChaCha8Rng::seed_from_u64(s)
}

/// Stable salts for the built-in suites (independent of config order).
pub fn suite_salt(name: &str) -> u64 {
    // FNV-1a over the suite name: stable across runs and platforms.
    let mut h: u64 = 0xcbf2_9ce4_8422_2325;
    for b in name.as_bytes() {
        h ^= *b as u64;
        h = h.wrapping_mul(0x1000_0000_01b3);
    }
    h
}
