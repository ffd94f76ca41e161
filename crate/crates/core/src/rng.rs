//! Seeded randomness shared by generators, searches and tests.
//!
//! ChaCha8 is portable: the same seed gives the same stream on every
//! platform and every build, which keeps fixtures and acceptance runs
//! bit-reproducible.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

pub type Rng = ChaCha8Rng;

pub fn seeded(seed: u64) -> Rng {
    ChaCha8Rng::seed_from_u64(seed)
}
