//! Exhaustive generation of labeled finite topologies and systems.
//!
//! Topologies on `n` points correspond one-to-one to preorders on `n`
//! points through their minimal-neighbourhood functions. Preorders are built
//! one point at a time: a preorder on `0..=k` restricts to a unique preorder
//! on `0..k`, and is recovered from it by the neighbourhood `A` of the new
//! point and the set `B` of old points whose neighbourhood gains it.

use crate::dynamics::{DynSystem, SelfMap};
use crate::mask::SubsetMask;
use crate::topology::FiniteTopology;

use super::ZooError;

/// Largest point count the generators accept.
pub const ENUMERATION_CAP: usize = 6;

/// Largest point count for the family-filter oracle (`2^(2^n)` families).
pub const FAMILY_FILTER_CAP: usize = 4;

/// The minimal open neighbourhood of every point, i.e. a reflexive,
/// transitive relation `y ∈ nbhd[x]`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct MinNbhdFunction {
    nbhd: Vec<SubsetMask>,
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum NbhdError {
    #[error("point {0} is not in its own neighbourhood")]
    NotReflexive(usize),
    #[error("{y} is in the neighbourhood of {x} but its own neighbourhood is not")]
    NotTransitive { x: usize, y: usize },
    #[error("neighbourhood of {0} mentions a point outside the space")]
    OutOfRange(usize),
}

impl MinNbhdFunction {
    pub fn new(nbhd: Vec<SubsetMask>) -> Result<Self, NbhdError> {
        let n = nbhd.len();
        for (x, &nx) in nbhd.iter().enumerate() {
            if !nx.fits(n) {
                return Err(NbhdError::OutOfRange(x));
            }
            if !nx.contains(x) {
                return Err(NbhdError::NotReflexive(x));
            }
            if let Some(y) = nx.iter().find(|&y| !nbhd[y].is_subset_of(nx)) {
                return Err(NbhdError::NotTransitive { x, y });
            }
        }
        Ok(MinNbhdFunction { nbhd })
    }

    pub fn of_topology(t: &FiniteTopology) -> Self {
        MinNbhdFunction {
            nbhd: t.minimal_neighborhoods().to_vec(),
        }
    }

    pub fn n(&self) -> usize {
        self.nbhd.len()
    }

    pub fn nbhds(&self) -> &[SubsetMask] {
        &self.nbhd
    }

    /// Every `U` containing the neighbourhood of each of its points, in
    /// ascending order.
    pub fn opens(&self) -> Vec<SubsetMask> {
        let n = self.n();
        assert!(n <= 20, "open-set scan limited to 20 points");
        SubsetMask::all_subsets(n)
            .filter(|&u| u.iter().all(|x| self.nbhd[x].is_subset_of(u)))
            .collect()
    }

    pub fn topology(&self) -> FiniteTopology {
        FiniteTopology::from_sorted_opens(self.n(), self.opens())
    }
}

fn check_cap(n: usize, cap: usize) -> Result<(), ZooError> {
    if n == 0 {
        return Err(ZooError::ZeroPoints);
    }
    if n > cap {
        return Err(ZooError::CapExceeded { n, cap });
    }
    Ok(())
}

/// All minimal-neighbourhood functions on `n` points, in generation order.
pub fn min_nbhd_functions(n: usize) -> Result<Vec<MinNbhdFunction>, ZooError> {
    check_cap(n, ENUMERATION_CAP)?;
    let mut level = vec![vec![SubsetMask::singleton(0)]];
    for k in 1..n {
        let mut next = Vec::new();
        for nbhd in &level {
            extend_by_one_point(nbhd, k, &mut next);
        }
        level = next;
    }
    Ok(level
        .into_iter()
        .map(|nbhd| MinNbhdFunction { nbhd })
        .collect())
}

/// Pushes every preorder on `0..=k` restricting to `nbhd` on `0..k`.
fn extend_by_one_point(nbhd: &[SubsetMask], k: usize, out: &mut Vec<Vec<SubsetMask>>) {
    let old = SubsetMask::full(k);
    let new_point = SubsetMask::singleton(k);
    // A: neighbourhood of k among old points, closed under nbhd.
    let downs: Vec<SubsetMask> = SubsetMask::all_subsets(k)
        .filter(|&a| a.iter().all(|y| nbhd[y].is_subset_of(a)))
        .collect();
    // B: old points that see k, closed upward (x ∈ B, x ∈ nbhd[z] ⇒ z ∈ B).
    let ups: Vec<SubsetMask> = SubsetMask::all_subsets(k)
        .filter(|&b| (0..k).all(|z| !nbhd[z].intersects(b) || b.contains(z)))
        .collect();
    for &a in &downs {
        for &b in &ups {
            if !b.iter().all(|x| a.is_subset_of(nbhd[x])) {
                continue;
            }
            let mut ext: Vec<SubsetMask> = nbhd
                .iter()
                .enumerate()
                .map(|(x, &nx)| if b.contains(x) { nx | new_point } else { nx })
                .collect();
            ext.push((a & old) | new_point);
            out.push(ext);
        }
    }
}

/// Every labeled topology on `n` points exactly once, in a fixed order.
pub fn enumerate_topologies(n: usize) -> Result<impl Iterator<Item = FiniteTopology>, ZooError> {
    Ok(min_nbhd_functions(n)?.into_iter().map(|f| f.topology()))
}

/// Independent generator: every family of subsets of `X` that contains `∅`
/// and `X` and is closed under pairwise union and intersection.
pub fn topologies_by_family_filter(n: usize) -> Result<Vec<FiniteTopology>, ZooError> {
    check_cap(n, FAMILY_FILTER_CAP)?;
    let subsets = 1usize << n;
    let full = subsets - 1;
    let mut out = Vec::new();
    for family in 0u64..(1u64 << subsets) {
        let member = |s: usize| family >> s & 1 == 1;
        if !member(0) || !member(full) {
            continue;
        }
        let members: Vec<usize> = (0..subsets).filter(|&s| member(s)).collect();
        let closed = members
            .iter()
            .all(|&u| members.iter().all(|&v| member(u | v) && member(u & v)));
        if closed {
            let opens = members
                .into_iter()
                .map(|s| SubsetMask::from_bits(s as u64))
                .collect();
            out.push(FiniteTopology::from_sorted_opens(n, opens));
        }
    }
    Ok(out)
}

/// Number of self-maps on `n` points, `n^n`.
pub fn map_count(n: usize) -> usize {
    n.pow(n as u32)
}

/// The `index`-th self-map in lexicographic order of image vectors.
pub fn map_at(n: usize, mut index: usize) -> SelfMap {
    let mut image = vec![0; n];
    for slot in image.iter_mut().rev() {
        *slot = index % n;
        index /= n;
    }
    SelfMap::new(image).expect("digits below n")
}

/// All `n^n` self-maps in lexicographic order of image vectors.
pub fn all_maps(n: usize) -> impl Iterator<Item = SelfMap> {
    (0..map_count(n)).map(move |i| map_at(n, i))
}

/// Every (topology, map) pair on `n` points: topologies outer, maps inner.
pub fn enumerate_systems(n: usize) -> Result<impl Iterator<Item = DynSystem>, ZooError> {
    let topologies = enumerate_topologies(n)?;
    Ok(topologies
        .flat_map(move |t| all_maps(n).map(move |f| DynSystem::new(t.clone(), f).expect("same n"))))
}
