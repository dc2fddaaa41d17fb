//! Exhaustive enumeration, counterexample search and batch verification over
//! the universe of small finite systems.

pub mod canon;
pub mod enumerate;
pub mod search;
pub mod verify;

use crate::deciders::{DecideError, Property};

pub use canon::{canonical_key, relabel, CanonicalKey};
pub use enumerate::{
    all_maps, enumerate_systems, enumerate_topologies, map_at, map_count, min_nbhd_functions,
    topologies_by_family_filter, MinNbhdFunction, NbhdError, ENUMERATION_CAP, FAMILY_FILTER_CAP,
};
pub use search::{atlas, search, AtlasRecord, Filter, SearchQuery, UnknownFilter};
pub use verify::{
    run_proposition_suite, verify_no_hypermixing, HypermixingSweep, InvariantTally, SuiteConfig,
    SuiteReport,
};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ZooError {
    #[error("enumeration needs at least one point")]
    ZeroPoints,
    #[error("{n} points exceeds the enumeration cap of {cap}")]
    CapExceeded { n: usize, cap: usize },
    #[error("property `{0}` is both required and forbidden")]
    UnsatisfiableQuery(Property),
    #[error(transparent)]
    Decide(#[from] DecideError),
}

/// Environment variable capping the number of worker threads.
pub const THREADS_ENV: &str = "TOPODYN_THREADS";

/// Sizes the global worker pool from `TOPODYN_THREADS` if set. Returns the
/// requested count, or `None` when unset, unparsable, or the pool already
/// exists.
pub fn configure_threads_from_env() -> Option<usize> {
    let n: usize = std::env::var(THREADS_ENV).ok()?.trim().parse().ok()?;
    let n = n.max(1);
    rayon::ThreadPoolBuilder::new()
        .num_threads(n)
        .build_global()
        .ok()
        .map(|_| n)
}
