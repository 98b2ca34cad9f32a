//! Seed derivation for reproducible, parallel replication streams.
//!
//! Replication `r` of a stream rooted at `base_seed` draws from a generator
//! seeded with `base_seed ^ splitmix64(r)`. The mix step decorrelates the
//! low bits of consecutive replication indices, so replications can be
//! executed in any order, on any number of workers, with identical results.

/// SplitMix64 finalizer, used as a seed mixer.
pub fn splitmix64(x: u64) -> u64 {
    let mut z = x.wrapping_add(0x9E37_79B9_7F4A_7C15);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// Seed for replication `replication` of the stream rooted at `base_seed`.
pub fn replication_seed(base_seed: u64, replication: u64) -> u64 {
    base_seed ^ splitmix64(replication)
}

/// Root of the per-cell replication stream of a multi-cell experiment.
pub fn cell_stream_root(base_seed: u64, cell_index: usize) -> u64 {
    splitmix64(base_seed ^ splitmix64(cell_index as u64))
}
