//! Shared fixtures for the benchmarks.

use tricon::enumeration::{enumerate_all_3connected, LevelSet};
use tricon::Graph;

/// Every 3-connected graph of the given rank.
pub fn all_of_rank(rank: usize) -> Vec<Graph> {
    let levels: Vec<LevelSet> = enumerate_all_3connected(rank).expect("rank >= 3");
    levels.last().map(LevelSet::graphs).unwrap_or_default()
}
