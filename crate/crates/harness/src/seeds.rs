//! Per-realization seeds and index-ordered parallel maps.

use rayon::prelude::*;
use tdalab_core::field::RngSeed;

use crate::error::{HarnessError, Result};

pub fn splitmix64(x: u64) -> u64 {
    let mut z = x.wrapping_add(0x9E37_79B9_7F4A_7C15);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

pub fn realization_seed(base: u64, index: usize) -> RngSeed {
    RngSeed(base ^ splitmix64(index as u64))
}

/// Runs `f` for every realization index in parallel. Results come back in
/// index order, so aggregation does not depend on scheduling.
pub fn realizations<T, F>(runs: usize, base: u64, f: F) -> Result<Vec<T>>
where
    T: Send,
    F: Fn(usize, RngSeed) -> Result<T> + Sync,
{
    (0..runs)
        .into_par_iter()
        .map(|i| {
            f(i, realization_seed(base, i)).map_err(|e| match e {
                HarnessError::Realization { .. } => e,
                other => HarnessError::Realization { index: i, msg: other.to_string() },
            })
        })
        .collect()
}
