//! Seeded random number generation.
//!
//! Every sampled quantity in the crate is drawn from [`ProtocolRng`], which
//! is ChaCha with 8 rounds (`rand_chacha::ChaCha8Rng`) seeded through
//! `SeedableRng::seed_from_u64`. The stream is platform independent, so a
//! given seed reproduces the same Haar inputs and measurement outcomes
//! everywhere.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

pub type ProtocolRng = ChaCha8Rng;

pub fn seeded(seed: u64) -> ProtocolRng {
    ChaCha8Rng::seed_from_u64(seed)
}
