//! Subsets of a point set `0..n` (n ≤ 64) packed into a single machine word.

use std::fmt;
use std::ops::{BitAnd, BitAndAssign, BitOr, BitOrAssign};

/// Largest supported number of points.
pub const MAX_POINTS: usize = 64;

/// A subset of the points `0..n`, bit `x` set iff point `x` is a member.
///
/// The mask does not carry `n`; operations that need the ambient set
/// (complement, fullness) take it explicitly.
#[derive(Clone, Copy, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SubsetMask(u64);

impl SubsetMask {
    pub const EMPTY: SubsetMask = SubsetMask(0);

    #[inline]
    pub const fn from_bits(bits: u64) -> Self {
        SubsetMask(bits)
    }

    #[inline]
    pub const fn bits(self) -> u64 {
        self.0
    }

    /// The whole point set `{0, .., n-1}`.
    #[inline]
    pub const fn full(n: usize) -> Self {
        if n >= 64 {
            SubsetMask(u64::MAX)
        } else {
            SubsetMask((1u64 << n) - 1)
        }
    }

    #[inline]
    pub const fn singleton(x: usize) -> Self {
        SubsetMask(1u64 << x)
    }

    #[inline]
    pub const fn contains(self, x: usize) -> bool {
        x < 64 && self.0 & (1u64 << x) != 0
    }

    #[inline]
    pub fn insert(&mut self, x: usize) {
        self.0 |= 1u64 << x;
    }

    #[inline]
    pub const fn is_empty(self) -> bool {
        self.0 == 0
    }

    #[inline]
    pub const fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    #[inline]
    pub const fn union(self, other: Self) -> Self {
        SubsetMask(self.0 | other.0)
    }

    #[inline]
    pub const fn intersection(self, other: Self) -> Self {
        SubsetMask(self.0 & other.0)
    }

    #[inline]
    pub const fn difference(self, other: Self) -> Self {
        SubsetMask(self.0 & !other.0)
    }

    /// Complement relative to `{0, .., n-1}`.
    #[inline]
    pub const fn complement(self, n: usize) -> Self {
        SubsetMask(!self.0 & SubsetMask::full(n).0)
    }

    #[inline]
    pub const fn is_subset_of(self, other: Self) -> bool {
        self.0 & !other.0 == 0
    }

    #[inline]
    pub const fn intersects(self, other: Self) -> bool {
        self.0 & other.0 != 0
    }

    /// True iff no bit at index `n` or above is set.
    #[inline]
    pub const fn fits(self, n: usize) -> bool {
        self.is_subset_of(SubsetMask::full(n))
    }

    #[inline]
    pub const fn is_full(self, n: usize) -> bool {
        self.0 == SubsetMask::full(n).0
    }

    /// Smallest member, if any.
    #[inline]
    pub const fn first(self) -> Option<usize> {
        if self.0 == 0 {
            None
        } else {
            Some(self.0.trailing_zeros() as usize)
        }
    }

    /// Members in increasing order.
    pub fn iter(self) -> Points {
        Points(self.0)
    }

    /// Every subset of `{0, .., n-1}` in increasing numeric order. Only
    /// sensible for small `n`.
    pub fn all_subsets(n: usize) -> impl Iterator<Item = SubsetMask> {
        assert!(n < 64, "all_subsets needs n < 64");
        (0..(1u64 << n)).map(SubsetMask)
    }
}

/// Iterator over the members of a [`SubsetMask`].
#[derive(Clone, Debug)]
pub struct Points(u64);

impl Iterator for Points {
    type Item = usize;

    #[inline]
    fn next(&mut self) -> Option<usize> {
        if self.0 == 0 {
            return None;
        }
        let x = self.0.trailing_zeros() as usize;
        self.0 &= self.0 - 1;
        Some(x)
    }

    fn size_hint(&self) -> (usize, Option<usize>) {
        let c = self.0.count_ones() as usize;
        (c, Some(c))
    }
}

impl ExactSizeIterator for Points {}

impl IntoIterator for SubsetMask {
    type Item = usize;
    type IntoIter = Points;

    fn into_iter(self) -> Points {
        self.iter()
    }
}

impl FromIterator<usize> for SubsetMask {
    fn from_iter<I: IntoIterator<Item = usize>>(iter: I) -> Self {
        let mut m = SubsetMask::EMPTY;
        for x in iter {
            m.insert(x);
        }
        m
    }
}

impl BitOr for SubsetMask {
    type Output = SubsetMask;
    fn bitor(self, rhs: Self) -> Self {
        self.union(rhs)
    }
}

impl BitOrAssign for SubsetMask {
    fn bitor_assign(&mut self, rhs: Self) {
        self.0 |= rhs.0;
    }
}

impl BitAnd for SubsetMask {
    type Output = SubsetMask;
    fn bitand(self, rhs: Self) -> Self {
        self.intersection(rhs)
    }
}

impl BitAndAssign for SubsetMask {
    fn bitand_assign(&mut self, rhs: Self) {
        self.0 &= rhs.0;
    }
}

impl fmt::Debug for SubsetMask {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}

impl fmt::Display for SubsetMask {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (i, x) in self.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{x}")?;
        }
        write!(f, "}}")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn full_and_complement() {
        assert_eq!(SubsetMask::full(0), SubsetMask::EMPTY);
        assert_eq!(SubsetMask::full(3).bits(), 0b111);
        assert_eq!(SubsetMask::full(64).bits(), u64::MAX);
        let a = SubsetMask::from_bits(0b001);
        assert_eq!(a.complement(3).bits(), 0b110);
        assert!(a.complement(3).fits(3));
    }

    #[test]
    fn iteration_order() {
        let m = SubsetMask::from_bits(0b1010_0101);
        assert_eq!(m.iter().collect::<Vec<_>>(), vec![0, 2, 5, 7]);
        assert_eq!(m.iter().len(), 4);
        assert_eq!(m.first(), Some(0));
        assert_eq!(SubsetMask::EMPTY.first(), None);
        assert_eq!(m.iter().collect::<SubsetMask>(), m);
    }

    #[test]
    fn display() {
        assert_eq!(SubsetMask::from_bits(0b101).to_string(), "{0,2}");
        assert_eq!(SubsetMask::EMPTY.to_string(), "{}");
    }

    proptest! {
        #[test]
        fn set_algebra_stays_inside_n(n in 1usize..=64, a: u64, b: u64) {
            let full = SubsetMask::full(n);
            let a = SubsetMask::from_bits(a) & full;
            let b = SubsetMask::from_bits(b) & full;
            prop_assert!((a | b).fits(n));
            prop_assert!((a & b).fits(n));
            prop_assert!(a.complement(n).fits(n));
            prop_assert!(a.difference(b).fits(n));
            prop_assert_eq!(a.complement(n).complement(n), a);
            prop_assert_eq!((a | b).complement(n), a.complement(n) & b.complement(n));
            prop_assert_eq!(a.is_subset_of(b), (a | b) == b);
            prop_assert_eq!(a.intersects(b), !(a & b).is_empty());
        }
    }
}
