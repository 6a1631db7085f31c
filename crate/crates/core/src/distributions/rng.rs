//! Seeded, portable random streams.
//!
//! Every run owns a 64-bit seed. The generator for a run is ChaCha8 keyed by
//! `seed_from_u64(seed)`, and independent sub-streams of one run are selected
//! with ChaCha's stream counter (see [`Stream`]). ChaCha output is specified
//! bit-for-bit, so identical seeds give identical samples on every platform.
//!
//! Replicate `r` of a batch with master seed `m` runs with
//! `derive_seed(m, r) = splitmix64(m + (r + 1) * 0x9E3779B97F4A7C15)`
//! (wrapping arithmetic), so any replicate can be reproduced in isolation.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

pub type SimRng = ChaCha8Rng;

/// Sub-stream selector within one run.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Stream {
    /// Urn draws from the Zipf law (elementary placements).
    Placement = 0,
    /// Everything else: Poisson ball counts, re-toss coins, previous-ball picks.
    Auxiliary = 1,
}

pub fn rng_for(seed: u64, stream: Stream) -> SimRng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(stream as u64);
    rng
}

const GOLDEN_GAMMA: u64 = 0x9E37_79B9_7F4A_7C15;

fn splitmix64(mut z: u64) -> u64 {
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

pub fn derive_seed(master: u64, replicate: u64) -> u64 {
    splitmix64(master.wrapping_add(replicate.wrapping_add(1).wrapping_mul(GOLDEN_GAMMA)))
}
