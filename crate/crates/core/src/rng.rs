//! Seeded random streams.
//!
//! Every consumer of randomness derives its own ChaCha stream from
//! `(seed, stream)` so that results never depend on scheduling order.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

pub type Rng = ChaCha8Rng;

/// Stream domains keep independent consumers of the same seed apart.
#[derive(Debug, Clone, Copy)]
#[repr(u64)]
pub enum Domain {
    Augment = 1,
    Split = 2,
    Shuffle = 3,
    Init = 4,
    Tree = 5,
    RandomGrid = 6,
}

pub fn stream(seed: u64, domain: Domain, index: u64) -> Rng {
    let mut rng =
        ChaCha8Rng::seed_from_u64(seed ^ (domain as u64).wrapping_mul(0x9E37_79B9_7F4A_7C15));
    rng.set_stream(index);
    rng
}
