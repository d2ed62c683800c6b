//! Deterministic random streams.
//!
//! Every run owns one ChaCha8 stream keyed by `(base_seed, run_index)`, so runs
//! can execute in any order or in parallel and still draw the same numbers.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

pub type SimRng = ChaCha8Rng;

/// The stream for one run of a batch.
pub fn run_stream(base_seed: u64, run_index: u64) -> SimRng {
    let mut rng = ChaCha8Rng::seed_from_u64(base_seed);
    rng.set_stream(run_index);
    rng
}
