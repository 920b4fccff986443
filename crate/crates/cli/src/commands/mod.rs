pub mod analyze;
pub mod bench;
pub mod distsim;
pub mod replay;
pub mod reproduce;

use genobound_core::{Benchmark, RestrictionStrategy};

pub(crate) fn parse_strategy(s: &str) -> Result<RestrictionStrategy, String> {
    s.parse().map_err(|e: genobound_core::Error| e.to_string())
}

pub(crate) fn parse_benchmark(s: &str) -> Result<Benchmark, String> {
    s.parse().map_err(|e: genobound_core::Error| e.to_string())
}
