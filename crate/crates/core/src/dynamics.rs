//! Self-maps, orbits and the eventual periodicity of set iteration.
//!
//! For a map `f` on `n` points the sequence `U, f(U), f²(U), ...` lives in a
//! set of size `2^n`, so it is eventually periodic. [`SetTrajectory`] stores
//! the preperiod and period block exactly; every infinite union or
//! `⋃_i ⋂_{k≥i}` expression over the sequence is then a finite computation
//! over that block.

use std::collections::HashMap;
use std::fmt;
use std::sync::OnceLock;

use thiserror::Error;

use crate::mask::{SubsetMask, MAX_POINTS};
use crate::topology::FiniteTopology;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum MapError {
    #[error("a map needs at least one point")]
    ZeroPoints,
    #[error("{0} points requested, at most {MAX_POINTS} are supported")]
    TooManyPoints(usize),
    #[error("point {point} is sent to {image}, outside 0..{n}")]
    ImageOutOfRange {
        point: usize,
        image: usize,
        n: usize,
    },
    #[error("topology has {topology} points but the map has {map}")]
    PointCountMismatch { topology: usize, map: usize },
}

/// A total map on the points `0..n`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SelfMap {
    image: Vec<usize>,
}

impl SelfMap {
    pub fn new(image: Vec<usize>) -> Result<Self, MapError> {
        let n = image.len();
        if n == 0 {
            return Err(MapError::ZeroPoints);
        }
        if n > MAX_POINTS {
            return Err(MapError::TooManyPoints(n));
        }
        if let Some((point, &image)) = image.iter().enumerate().find(|(_, &y)| y >= n) {
            return Err(MapError::ImageOutOfRange { point, image, n });
        }
        Ok(SelfMap { image })
    }

    pub fn identity(n: usize) -> Self {
        SelfMap {
            image: (0..n).collect(),
        }
    }

    pub fn constant(n: usize, c: usize) -> Self {
        assert!(c < n);
        SelfMap { image: vec![c; n] }
    }

    pub fn n(&self) -> usize {
        self.image.len()
    }

    #[inline]
    pub fn apply(&self, x: usize) -> usize {
        self.image[x]
    }

    pub fn images(&self) -> &[usize] {
        &self.image
    }

    /// Direct image `f(S)`.
    #[inline]
    pub fn image_set(&self, s: SubsetMask) -> SubsetMask {
        let mut out = SubsetMask::EMPTY;
        for x in s {
            out.insert(self.image[x]);
        }
        out
    }

    /// Preimage `f⁻¹(S)`.
    pub fn preimage_set(&self, s: SubsetMask) -> SubsetMask {
        (0..self.n())
            .filter(|&x| s.contains(self.image[x]))
            .collect()
    }

    pub fn range(&self) -> SubsetMask {
        self.image_set(SubsetMask::full(self.n()))
    }

    pub fn is_surjective(&self) -> bool {
        self.range().is_full(self.n())
    }

    pub fn is_injective(&self) -> bool {
        self.collision().is_none()
    }

    /// First pair `x < y` with `f(x) = f(y)`.
    pub fn collision(&self) -> Option<(usize, usize)> {
        let mut seen: Vec<Option<usize>> = vec![None; self.n()];
        for (x, &y) in self.image.iter().enumerate() {
            if let Some(first) = seen[y] {
                return Some((first, x));
            }
            seen[y] = Some(x);
        }
        None
    }

    /// `self ∘ other`: apply `other` first.
    pub fn compose(&self, other: &SelfMap) -> SelfMap {
        assert_eq!(self.n(), other.n());
        SelfMap {
            image: other.image.iter().map(|&y| self.image[y]).collect(),
        }
    }

    /// The `p`-fold composite `f^p`; `p = 0` gives the identity.
    pub fn power(&self, p: usize) -> SelfMap {
        let mut result = SelfMap::identity(self.n());
        let mut base = self.clone();
        let mut e = p;
        while e > 0 {
            if e & 1 == 1 {
                result = base.compose(&result);
            }
            base = base.compose(&base);
            e >>= 1;
        }
        result
    }

    /// The set `{x, f(x), f²(x), ...}`.
    pub fn orbit(&self, x: usize) -> SubsetMask {
        let mut seen = SubsetMask::EMPTY;
        let mut cur = x;
        while !seen.contains(cur) {
            seen.insert(cur);
            cur = self.image[cur];
        }
        seen
    }

    /// Eventually periodic description of `U, f(U), f²(U), ...`.
    pub fn trajectory(&self, source: SubsetMask) -> SetTrajectory {
        let mut first_index: HashMap<SubsetMask, usize> = HashMap::new();
        let mut snapshots = Vec::new();
        let mut cur = source;
        loop {
            if let Some(&start) = first_index.get(&cur) {
                let period = snapshots.len() - start;
                return SetTrajectory {
                    source,
                    preperiod: start,
                    period,
                    snapshots,
                };
            }
            first_index.insert(cur, snapshots.len());
            snapshots.push(cur);
            cur = self.image_set(cur);
        }
    }

    /// `⋃_{k≥0} f^k(U)`. Accumulates images until an image adds nothing;
    /// at that point the accumulated set is mapped into itself.
    pub fn forward_union(&self, source: SubsetMask) -> SubsetMask {
        let mut acc = source;
        let mut cur = source;
        loop {
            cur = self.image_set(cur);
            if cur.is_subset_of(acc) {
                return acc;
            }
            acc |= cur;
        }
    }

    /// `⋃_i ⋂_{k≥i} f^k(U)`, the points eventually always covered by the
    /// images of `U`.
    pub fn liminf_set(&self, source: SubsetMask) -> SubsetMask {
        self.trajectory(source).liminf()
    }
}

impl fmt::Debug for SelfMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "SelfMap{:?}", self.image)
    }
}

/// `f^0(U), .., f^{p+q-1}(U)` where `f^{p+q}(U) = f^p(U)` and `p` is the first
/// index whose set recurs.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SetTrajectory {
    pub source: SubsetMask,
    pub preperiod: usize,
    pub period: usize,
    pub snapshots: Vec<SubsetMask>,
}

impl SetTrajectory {
    /// `f^k(U)` for any `k`.
    pub fn at(&self, k: usize) -> SubsetMask {
        if k < self.snapshots.len() {
            self.snapshots[k]
        } else {
            self.snapshots[self.preperiod + (k - self.preperiod) % self.period]
        }
    }

    /// The periodic block `f^p(U), .., f^{p+q-1}(U)`.
    pub fn cycle(&self) -> &[SubsetMask] {
        &self.snapshots[self.preperiod..]
    }

    /// `⋂_{k≥i} f^k(U)` is non-decreasing in `i` and constant from `i = p`
    /// on, where it equals the intersection of the cycle block.
    pub fn liminf(&self) -> SubsetMask {
        self.cycle()
            .iter()
            .fold(self.snapshots[self.preperiod], |acc, &s| acc & s)
    }

    /// Union of every set in the sequence.
    pub fn union(&self) -> SubsetMask {
        self.snapshots
            .iter()
            .fold(SubsetMask::EMPTY, |acc, &s| acc | s)
    }
}

/// A finite space paired with a self-map of it.
#[derive(Clone)]
pub struct DynSystem {
    topology: FiniteTopology,
    map: SelfMap,
    continuous: OnceLock<bool>,
    open_map: OnceLock<bool>,
}

impl DynSystem {
    pub fn new(topology: FiniteTopology, map: SelfMap) -> Result<Self, MapError> {
        if topology.n() != map.n() {
            return Err(MapError::PointCountMismatch {
                topology: topology.n(),
                map: map.n(),
            });
        }
        Ok(DynSystem {
            topology,
            map,
            continuous: OnceLock::new(),
            open_map: OnceLock::new(),
        })
    }

    pub fn topology(&self) -> &FiniteTopology {
        &self.topology
    }

    pub fn map(&self) -> &SelfMap {
        &self.map
    }

    pub fn n(&self) -> usize {
        self.map.n()
    }

    /// Same space, map replaced.
    pub fn with_map(&self, map: SelfMap) -> DynSystem {
        DynSystem::new(self.topology.clone(), map).expect("same point count")
    }

    /// First open set whose preimage is not open.
    pub fn discontinuity(&self) -> Option<SubsetMask> {
        self.topology
            .opens()
            .iter()
            .copied()
            .find(|&o| !self.topology.is_open(self.map.preimage_set(o)))
    }

    pub fn is_continuous(&self) -> bool {
        *self
            .continuous
            .get_or_init(|| self.discontinuity().is_none())
    }

    /// First open set whose image is not open.
    pub fn non_open_image(&self) -> Option<SubsetMask> {
        self.topology
            .opens()
            .iter()
            .copied()
            .find(|&o| !self.topology.is_open(self.map.image_set(o)))
    }

    pub fn is_open_map(&self) -> bool {
        *self
            .open_map
            .get_or_init(|| self.non_open_image().is_none())
    }
}

impl PartialEq for DynSystem {
    fn eq(&self, other: &Self) -> bool {
        self.topology == other.topology && self.map == other.map
    }
}

impl Eq for DynSystem {}

impl fmt::Debug for DynSystem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("DynSystem")
            .field("opens", &self.topology.opens())
            .field("map", &self.map.images())
            .finish()
    }
}

/// Compact one-line form, e.g. `opens={{},{a,b},{a,b,c}} map=a>c,b>c,c>c`.
impl fmt::Display for DynSystem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let t = &self.topology;
        let arrows: Vec<String> = (0..self.n())
            .map(|x| format!("{}>{}", t.name(x), t.name(self.map.apply(x))))
            .collect();
        write!(f, "opens={} map={}", t, arrows.join(","))
    }
}
