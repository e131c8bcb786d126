//! Deterministic per-stratum random generators.
//!
//! Each sampling site derives its own generator from the run seed plus a
//! string path identifying the stratum (regime, metric family, level,
//! language, ...). Strata can then be processed in any order, or in
//! parallel, without changing a single draw.

use rand_chacha::ChaCha8Rng;
use sha2::{Digest, Sha256};

pub(crate) fn stratum_rng(seed: u64, path: &[&str]) -> ChaCha8Rng {
    let mut hasher = Sha256::new();
    hasher.update(seed.to_le_bytes());
    for part in path {
        hasher.update([0xff]);
        hasher.update(part.as_bytes());
    }
    let digest = hasher.finalize();
    let mut key = [0u8; 32];
    key.copy_from_slice(&digest);
    rand::SeedableRng::from_seed(key)
}
