//! Fixtures shared by the benchmarks.

use std::sync::Arc;

use coxwalls::{CoxeterSystem, Word};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Uniform random words of length `len` over the generators of `system`.
pub fn random_words(system: &Arc<CoxeterSystem>, count: usize, len: usize, seed: u64) -> Vec<Word> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count).map(|_| Word((0..len).map(|_| rng.gen_range(0..system.rank())).collect())).collect()
}
