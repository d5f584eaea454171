//! Generators, law checks and brute-force oracles shared by the integration
//! suites and the acceptance runner.
#![allow(dead_code)]

pub mod checks;
pub mod cuts;
pub mod oracle;
pub mod series;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}
