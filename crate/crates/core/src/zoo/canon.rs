//! Relabeling and canonical keys for deduplication up to homeomorphism.

use std::fmt;

use itertools::Itertools;

use crate::dynamics::{DynSystem, SelfMap};
use crate::mask::SubsetMask;
use crate::topology::FiniteTopology;

/// Lexicographically least `(opens, map)` encoding over all relabelings.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CanonicalKey {
    n: usize,
    opens: Vec<u64>,
    map: Vec<u8>,
}

impl fmt::Display for CanonicalKey {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{}|{}|{}",
            self.n,
            self.opens.iter().join(","),
            self.map.iter().join(",")
        )
    }
}

fn permute_mask(s: SubsetMask, perm: &[usize]) -> SubsetMask {
    s.iter().map(|x| perm[x]).collect()
}

/// Renames point `x` to `perm[x]`. The result carries default point names.
pub fn relabel(sys: &DynSystem, perm: &[usize]) -> DynSystem {
    let n = sys.n();
    assert_eq!(perm.len(), n);
    debug_assert!(perm.iter().copied().collect::<SubsetMask>().is_full(n));
    let mut opens: Vec<SubsetMask> = sys
        .topology()
        .opens()
        .iter()
        .map(|&o| permute_mask(o, perm))
        .collect();
    opens.sort_unstable();
    let mut image = vec![0; n];
    for x in 0..n {
        image[perm[x]] = perm[sys.map().apply(x)];
    }
    DynSystem::new(
        FiniteTopology::from_sorted_opens(n, opens),
        SelfMap::new(image).expect("permutation of a valid map"),
    )
    .expect("same n")
}

fn encode(sys: &DynSystem, perm: &[usize]) -> CanonicalKey {
    let n = sys.n();
    let mut opens: Vec<u64> = sys
        .topology()
        .opens()
        .iter()
        .map(|&o| permute_mask(o, perm).bits())
        .collect();
    opens.sort_unstable();
    let mut map = vec![0u8; n];
    for x in 0..n {
        map[perm[x]] = perm[sys.map().apply(x)] as u8;
    }
    CanonicalKey { n, opens, map }
}

/// Minimum encoding over all `n!` relabelings.
pub fn canonical_key(sys: &DynSystem) -> CanonicalKey {
    let n = sys.n();
    (0..n)
        .permutations(n)
        .map(|perm| encode(sys, &perm))
        .min()
        .expect("at least one permutation")
}
