//! Seeded randomness.
//!
//! Every random draw in the crate goes through [`ChaCha8Rng`] seeded from a
//! `u64`. ChaCha8 output is specified independently of the host platform, so
//! a seed reproduces the same stream everywhere.

use rand::SeedableRng;
pub use rand_chacha::ChaCha8Rng as SimRng;

pub fn seeded(seed: u64) -> SimRng {
    SimRng::seed_from_u64(seed)
}

/// Derives an independent stream for a sub-task (mobility step, flow sampling).
pub fn derive(seed: u64, stream: u64) -> SimRng {
    let mut rng = seeded(seed);
    rng.set_stream(stream);
    rng
}
