//! Property-constrained search over all systems of a given size.

use std::collections::HashSet;
use std::fmt;
use std::str::FromStr;

use rayon::prelude::*;

use crate::deciders::{classify, Property, PropertyProfile};
use crate::dynamics::DynSystem;
use crate::topology::FiniteTopology;

use super::canon::{canonical_key, CanonicalKey};
use super::enumerate::{map_at, map_count, min_nbhd_functions};
use super::ZooError;

/// Hypotheses a system must meet before its profile is considered.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Filter {
    Continuous,
    NoIsolatedPoints,
    Hausdorff,
    NontrivialTopology,
}

impl Filter {
    pub const ALL: [Filter; 4] = [
        Filter::Continuous,
        Filter::NoIsolatedPoints,
        Filter::Hausdorff,
        Filter::NontrivialTopology,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Filter::Continuous => "continuous",
            Filter::NoIsolatedPoints => "no-isolated-points",
            Filter::Hausdorff => "hausdorff",
            Filter::NontrivialTopology => "nontrivial-topology",
        }
    }

    fn admits_topology(self, t: &FiniteTopology) -> bool {
        match self {
            Filter::Continuous => true,
            Filter::NoIsolatedPoints => !t.has_isolated_points(),
            Filter::Hausdorff => t.is_hausdorff(),
            Filter::NontrivialTopology => !t.is_trivial(),
        }
    }

    fn admits(self, sys: &DynSystem) -> bool {
        match self {
            Filter::Continuous => sys.is_continuous(),
            _ => self.admits_topology(sys.topology()),
        }
    }
}

impl fmt::Display for Filter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("unknown filter `{0}`")]
pub struct UnknownFilter(pub String);

impl FromStr for Filter {
    type Err = UnknownFilter;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let norm = s.trim().to_ascii_lowercase().replace('_', "-");
        Filter::ALL
            .into_iter()
            .find(|f| f.name() == norm)
            .ok_or_else(|| UnknownFilter(s.to_string()))
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct SearchQuery {
    pub n: usize,
    pub required: Vec<Property>,
    pub forbidden: Vec<Property>,
    pub filters: Vec<Filter>,
    pub limit: Option<usize>,
    /// Keep only the first system of each homeomorphism class.
    pub dedup: bool,
}

impl SearchQuery {
    pub fn new(n: usize) -> Self {
        SearchQuery {
            n,
            ..Default::default()
        }
    }

    pub fn require(mut self, p: Property) -> Self {
        self.required.push(p);
        self
    }

    pub fn forbid(mut self, p: Property) -> Self {
        self.forbidden.push(p);
        self
    }

    pub fn filter(mut self, f: Filter) -> Self {
        self.filters.push(f);
        self
    }

    pub fn limit(mut self, k: usize) -> Self {
        self.limit = Some(k);
        self
    }

    pub fn dedup(mut self, yes: bool) -> Self {
        self.dedup = yes;
        self
    }

    fn matches(&self, profile: &PropertyProfile) -> bool {
        self.required.iter().all(|&p| profile.holds(p))
            && self.forbidden.iter().all(|&p| !profile.holds(p))
    }
}

/// One classified system.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AtlasRecord {
    /// Position in the `enumerate_systems` order.
    pub index: usize,
    pub system: DynSystem,
    pub profile: PropertyProfile,
    pub key: CanonicalKey,
}

const TOPOLOGY_CHUNK: usize = 64;

/// Systems of size `q.n` matching the query, in enumeration order.
pub fn search(q: &SearchQuery) -> Result<Vec<AtlasRecord>, ZooError> {
    if let Some(&p) = q.required.iter().find(|p| q.forbidden.contains(p)) {
        return Err(ZooError::UnsatisfiableQuery(p));
    }
    let n = q.n;
    let functions = min_nbhd_functions(n)?;
    let maps = map_count(n);
    let limit = q.limit.unwrap_or(usize::MAX);
    let mut seen: HashSet<CanonicalKey> = HashSet::new();
    let mut out = Vec::new();
    if limit == 0 {
        return Ok(out);
    }

    for (chunk_no, chunk) in functions.chunks(TOPOLOGY_CHUNK).enumerate() {
        let found: Vec<Result<Vec<AtlasRecord>, ZooError>> = chunk
            .par_iter()
            .enumerate()
            .map(|(i, nf)| {
                let t_index = chunk_no * TOPOLOGY_CHUNK + i;
                let t = nf.topology();
                if !q.filters.iter().all(|f| f.admits_topology(&t)) {
                    return Ok(Vec::new());
                }
                let mut recs = Vec::new();
                for m in 0..maps {
                    let sys = DynSystem::new(t.clone(), map_at(n, m)).expect("same n");
                    if !q.filters.iter().all(|f| f.admits(&sys)) {
                        continue;
                    }
                    let profile = classify(&sys)?;
                    if q.matches(&profile) {
                        let key = canonical_key(&sys);
                        recs.push(AtlasRecord {
                            index: t_index * maps + m,
                            system: sys,
                            profile,
                            key,
                        });
                    }
                }
                Ok(recs)
            })
            .collect();
        for recs in found {
            for rec in recs? {
                if q.dedup && !seen.insert(rec.key.clone()) {
                    continue;
                }
                out.push(rec);
                if out.len() >= limit {
                    return Ok(out);
                }
            }
        }
    }
    Ok(out)
}

/// Every system of size `n` with its profile; one per class when `dedup`.
pub fn atlas(n: usize, dedup: bool) -> Result<Vec<AtlasRecord>, ZooError> {
    search(&SearchQuery::new(n).dedup(dedup))
}
