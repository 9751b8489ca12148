//! Fixtures shared by the benchmarks.

use std::sync::Arc;

use meadow_core::{FiniteRing, RingSpec};

/// Ring specs benchmarked by default, small to moderate.
pub const SPECS: &[&str] = &[
    "zn:6",
    "zn:12",
    "zn:60",
    "poly:p=2,mod=[0,0,1]",
    "prod:(zn:2,zn:4)",
    "ga:base=zn:2,group=[2,2]",
];

pub fn ring(spec: &str) -> Arc<FiniteRing> {
    RingSpec::parse(spec)
        .and_then(|s| s.build())
        .unwrap_or_else(|e| panic!("bench fixture {spec}: {e}"))
}
