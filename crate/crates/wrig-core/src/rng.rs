//! Deterministic substream derivation.
//!
//! Every randomized operation in this crate consumes a [`ChaCha8Rng`] derived
//! from `(seed, domain, index)`. Distinct triples map to distinct 256-bit
//! cipher keys, so the streams are independent and a parallel driver that
//! hands substream `index` to replication `index` produces bit-identical
//! results to a sequential loop regardless of scheduling or thread count.

use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

/// Namespace for substreams so different operations under one user seed
/// never share randomness.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
#[repr(u64)]
pub enum Domain {
    /// Weight vector sampling; index = vertex.
    Weights = 1,
    /// Bipartite membership sampling; index = vertex.
    Membership = 2,
    /// Category-sampling oracle for labeled triples; index = sample chunk.
    TripleOracle = 3,
    /// Conditional triple estimator; index = replication.
    TripleMc = 4,
}

/// Derives the substream for `(seed, domain, index)`.
///
/// The triple is injected verbatim into the key, so no two substreams of one
/// process can collide; independence then comes from the cipher itself.
pub fn substream(seed: u64, domain: Domain, index: u64) -> ChaCha8Rng {
    let mut key = [0u8; 32];
    key[0..8].copy_from_slice(&seed.to_le_bytes());
    key[8..16].copy_from_slice(&(domain as u64).to_le_bytes());
    key[16..24].copy_from_slice(&index.to_le_bytes());
    ChaCha8Rng::from_seed(key)
}
