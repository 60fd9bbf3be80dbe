use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use sha3::{Digest, Sha3_256};

/// A ChaCha8 stream keyed by SHA3-256 over the master seed, a query tag and
/// the query's arguments. Each distinct question gets its own stream, so an
/// answer never depends on which other questions were asked first.
pub fn derive_rng(seed: u64, tag: &str, parts: &[&[u8]]) -> ChaCha8Rng {
    let mut h = Sha3_256::new();
    h.update(seed.to_le_bytes());
    h.update((tag.len() as u64).to_le_bytes());
    h.update(tag.as_bytes());
    for p in parts {
        h.update((p.len() as u64).to_le_bytes());
        h.update(p);
    }
    ChaCha8Rng::from_seed(h.finalize().into())
}
