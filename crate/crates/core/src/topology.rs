//! Finite topological spaces and their closure/interior lattice.
//!
//! A finite topology is stored as the sorted list of its open sets together
//! with tables derived once at construction: the minimal open neighbourhood of
//! every point, the closed sets, and the closure of every singleton. Every
//! finite space is an Alexandrov space, so a set is open exactly when it
//! contains the minimal neighbourhood of each of its points.

use std::fmt;

use thiserror::Error;

use crate::mask::{SubsetMask, MAX_POINTS};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TopologyError {
    #[error("a topology needs at least one point")]
    ZeroPoints,
    #[error("{0} points requested, at most {MAX_POINTS} are supported")]
    TooManyPoints(usize),
    #[error("set {0:?} mentions a point outside the space")]
    MaskOutOfRange(SubsetMask),
    #[error("family is not closed under union: {0:?} ∪ {1:?} is missing")]
    NotUnionClosed(SubsetMask, SubsetMask),
    #[error("family is not closed under intersection: {0:?} ∩ {1:?} is missing")]
    NotIntersectionClosed(SubsetMask, SubsetMask),
    #[error("expected {expected} point names, got {got}")]
    NameCountMismatch { expected: usize, got: usize },
}

/// Default label of point `x`: `a`..`z`, then `p26`, `p27`, ...
pub fn default_point_name(x: usize) -> String {
    if x < 26 {
        ((b'a' + x as u8) as char).to_string()
    } else {
        format!("p{x}")
    }
}

/// A validated topology on the points `0..n`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct FiniteTopology {
    n: usize,
    opens: Vec<SubsetMask>,
    names: Vec<String>,
    tables: ClosureTables,
}

/// Tables derived from the open sets.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
struct ClosureTables {
    min_nbhd: Vec<SubsetMask>,
    closed_sets: Vec<SubsetMask>,
    closure_of_point: Vec<SubsetMask>,
}

impl ClosureTables {
    fn build(n: usize, opens: &[SubsetMask]) -> Self {
        let full = SubsetMask::full(n);
        let min_nbhd: Vec<SubsetMask> = (0..n)
            .map(|x| {
                opens
                    .iter()
                    .filter(|o| o.contains(x))
                    .fold(full, |acc, &o| acc & o)
            })
            .collect();
        let mut closed_sets: Vec<SubsetMask> = opens.iter().map(|o| o.complement(n)).collect();
        closed_sets.sort_unstable();
        let closure_of_point = (0..n)
            .map(|x| (0..n).filter(|&y| min_nbhd[y].contains(x)).collect())
            .collect();
        ClosureTables {
            min_nbhd,
            closed_sets,
            closure_of_point,
        }
    }
}

/// Checks the topology axioms for `family` on `n` points and returns the
/// canonical topology. `∅` and `X` are inserted if absent.
pub fn validate_topology(n: usize, family: &[SubsetMask]) -> Result<FiniteTopology, TopologyError> {
    if n == 0 {
        return Err(TopologyError::ZeroPoints);
    }
    if n > MAX_POINTS {
        return Err(TopologyError::TooManyPoints(n));
    }
    if let Some(&bad) = family.iter().find(|m| !m.fits(n)) {
        return Err(TopologyError::MaskOutOfRange(bad));
    }
    let mut opens: Vec<SubsetMask> = family.to_vec();
    opens.push(SubsetMask::EMPTY);
    opens.push(SubsetMask::full(n));
    opens.sort_unstable();
    opens.dedup();

    let member = |m: SubsetMask| opens.binary_search(&m).is_ok();
    for (i, &u) in opens.iter().enumerate() {
        for &v in &opens[i + 1..] {
            if !member(u | v) {
                return Err(TopologyError::NotUnionClosed(u, v));
            }
            if !member(u & v) {
                return Err(TopologyError::NotIntersectionClosed(u, v));
            }
        }
    }
    Ok(FiniteTopology::from_sorted_opens(n, opens))
}

impl FiniteTopology {
    /// See [`validate_topology`].
    pub fn new(n: usize, family: &[SubsetMask]) -> Result<Self, TopologyError> {
        validate_topology(n, family)
    }

    /// Builds from a list already known to be a sorted, duplicate-free
    /// topology.
    pub(crate) fn from_sorted_opens(n: usize, opens: Vec<SubsetMask>) -> Self {
        debug_assert!(opens.windows(2).all(|w| w[0] < w[1]));
        debug_assert_eq!(opens.first(), Some(&SubsetMask::EMPTY));
        debug_assert_eq!(opens.last(), Some(&SubsetMask::full(n)));
        let tables = ClosureTables::build(n, &opens);
        FiniteTopology {
            n,
            opens,
            names: (0..n).map(default_point_name).collect(),
            tables,
        }
    }

    /// Every subset open.
    pub fn discrete(n: usize) -> Self {
        assert!(
            (1..=20).contains(&n),
            "discrete topology only built for 1 ≤ n ≤ 20"
        );
        FiniteTopology::from_sorted_opens(n, SubsetMask::all_subsets(n).collect())
    }

    /// Only `∅` and `X` open.
    pub fn indiscrete(n: usize) -> Self {
        assert!((1..=MAX_POINTS).contains(&n));
        FiniteTopology::from_sorted_opens(n, vec![SubsetMask::EMPTY, SubsetMask::full(n)])
    }

    /// Replaces the point labels.
    pub fn with_names(mut self, names: Vec<String>) -> Result<Self, TopologyError> {
        if names.len() != self.n {
            return Err(TopologyError::NameCountMismatch {
                expected: self.n,
                got: names.len(),
            });
        }
        self.names = names;
        Ok(self)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn full(&self) -> SubsetMask {
        SubsetMask::full(self.n)
    }

    /// All open sets in ascending numeric order.
    pub fn opens(&self) -> &[SubsetMask] {
        &self.opens
    }

    /// Open sets other than `∅`, in canonical order.
    pub fn nonempty_opens(&self) -> &[SubsetMask] {
        &self.opens[1..]
    }

    /// All closed sets in ascending numeric order.
    pub fn closed_sets(&self) -> &[SubsetMask] {
        &self.tables.closed_sets
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn name(&self, x: usize) -> &str {
        &self.names[x]
    }

    pub fn is_trivial(&self) -> bool {
        self.opens.len() == 2
    }

    pub fn is_open(&self, s: SubsetMask) -> bool {
        s.fits(self.n) && s.iter().all(|x| self.tables.min_nbhd[x].is_subset_of(s))
    }

    pub fn is_closed(&self, s: SubsetMask) -> bool {
        s.fits(self.n) && self.is_open(s.complement(self.n))
    }

    /// Smallest closed superset of `s`.
    pub fn closure(&self, s: SubsetMask) -> SubsetMask {
        self.tables
            .closed_sets
            .iter()
            .filter(|c| s.is_subset_of(**c))
            .fold(self.full(), |acc, &c| acc & c)
    }

    /// Largest open subset of `s`.
    pub fn interior(&self, s: SubsetMask) -> SubsetMask {
        self.opens
            .iter()
            .filter(|o| o.is_subset_of(s))
            .fold(SubsetMask::EMPTY, |acc, &o| acc | o)
    }

    pub fn is_dense(&self, s: SubsetMask) -> bool {
        self.closure(s) == self.full()
    }

    /// Intersection of all open sets containing `x`.
    pub fn minimal_neighborhood(&self, x: usize) -> SubsetMask {
        self.tables.min_nbhd[x]
    }

    pub fn minimal_neighborhoods(&self) -> &[SubsetMask] {
        &self.tables.min_nbhd
    }

    pub fn closure_of_point(&self, x: usize) -> SubsetMask {
        self.tables.closure_of_point[x]
    }

    /// Points `x` whose singleton is open.
    pub fn isolated_points(&self) -> SubsetMask {
        (0..self.n)
            .filter(|&x| self.tables.min_nbhd[x] == SubsetMask::singleton(x))
            .collect()
    }

    pub fn has_isolated_points(&self) -> bool {
        !self.isolated_points().is_empty()
    }

    /// Whether distinct points always have disjoint open neighbourhoods.
    /// Two points can be separated iff their minimal neighbourhoods are
    /// disjoint.
    pub fn is_hausdorff(&self) -> bool {
        let m = &self.tables.min_nbhd;
        (0..self.n).all(|x| (x + 1..self.n).all(|y| !m[x].intersects(m[y])))
    }

    pub fn is_discrete(&self) -> bool {
        self.isolated_points().is_full(self.n)
    }

    /// Some nonempty open set is not dense.
    pub fn has_nondense_open(&self) -> bool {
        self.nonempty_opens().iter().any(|&u| !self.is_dense(u))
    }

    /// Renders a set using point names, e.g. `{a,b}`.
    pub fn format_set(&self, s: SubsetMask) -> String {
        let inner: Vec<&str> = s.iter().map(|x| self.name(x)).collect();
        format!("{{{}}}", inner.join(","))
    }
}

impl fmt::Debug for FiniteTopology {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("FiniteTopology")
            .field("n", &self.n)
            .field("opens", &self.opens)
            .finish()
    }
}

impl fmt::Display for FiniteTopology {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.opens.iter().map(|&o| self.format_set(o)).collect();
        write!(f, "{{{}}}", parts.join(", "))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(points: &[usize]) -> SubsetMask {
        points.iter().copied().collect()
    }

    const A: usize = 0;
    const B: usize = 1;
    const C: usize = 2;

    /// {∅, X, {a,b}} on three points.
    fn sierpinski_like() -> FiniteTopology {
        validate_topology(3, &[m(&[A, B])]).unwrap()
    }

    /// {∅, X, {a}, {b,c}} on three points.
    fn split() -> FiniteTopology {
        validate_topology(3, &[m(&[A]), m(&[B, C])]).unwrap()
    }

    /// Smallest closed superset found by brute force over every subset.
    fn closure_oracle(t: &FiniteTopology, s: SubsetMask) -> SubsetMask {
        SubsetMask::all_subsets(t.n())
            .filter(|&c| t.opens().contains(&c.complement(t.n())) && s.is_subset_of(c))
            .min_by_key(|c| c.len())
            .unwrap()
    }

    #[test]
    fn validate_examples() {
        let t = sierpinski_like();
        assert_eq!(t.opens(), &[m(&[]), m(&[A, B]), m(&[A, B, C])]);

        let one = validate_topology(1, &[]).unwrap();
        assert_eq!(one.opens(), &[SubsetMask::EMPTY, SubsetMask::full(1)]);

        assert_eq!(
            validate_topology(3, &[m(&[]), m(&[A, B, C]), m(&[A]), m(&[B])]),
            Err(TopologyError::NotUnionClosed(m(&[A]), m(&[B])))
        );
        assert_eq!(
            validate_topology(3, &[m(&[A, B]), m(&[B, C])]),
            Err(TopologyError::NotIntersectionClosed(m(&[A, B]), m(&[B, C])))
        );
        assert_eq!(validate_topology(0, &[]), Err(TopologyError::ZeroPoints));
        assert_eq!(
            validate_topology(2, &[m(&[2])]),
            Err(TopologyError::MaskOutOfRange(m(&[2])))
        );
        assert_eq!(
            validate_topology(65, &[]),
            Err(TopologyError::TooManyPoints(65))
        );
    }

    #[test]
    fn duplicates_and_order_are_normalised() {
        let t = validate_topology(3, &[m(&[A, B, C]), m(&[A, B]), m(&[A, B]), m(&[])]).unwrap();
        assert_eq!(t, sierpinski_like());
    }

    #[test]
    fn closure_examples() {
        let t = sierpinski_like();
        assert_eq!(t.closure(m(&[A])), t.full());
        assert_eq!(t.closure(m(&[A])), closure_oracle(&t, m(&[A])));
        assert_eq!(t.closure(SubsetMask::EMPTY), SubsetMask::EMPTY);
        let s = split();
        assert_eq!(s.closure(m(&[C])), m(&[B, C]));
        assert_eq!(s.closure(m(&[C])), closure_oracle(&s, m(&[C])));
    }

    #[test]
    fn interior_examples() {
        let t = sierpinski_like();
        assert_eq!(t.interior(t.full()), t.full());
        assert_eq!(t.interior(m(&[A])), SubsetMask::EMPTY);
    }

    #[test]
    fn density_examples() {
        let t = sierpinski_like();
        assert!(t.is_dense(m(&[A])));
        assert!(t.is_dense(t.full()));
        assert!(!split().is_dense(m(&[C])));
    }

    #[test]
    fn minimal_neighborhood_examples() {
        assert_eq!(sierpinski_like().minimal_neighborhood(A), m(&[A, B]));
        assert_eq!(FiniteTopology::discrete(2).minimal_neighborhood(A), m(&[A]));
        assert_eq!(
            FiniteTopology::indiscrete(3).minimal_neighborhood(B),
            m(&[A, B, C])
        );
    }

    #[test]
    fn isolated_point_examples() {
        assert_eq!(sierpinski_like().isolated_points(), SubsetMask::EMPTY);
        assert_eq!(
            FiniteTopology::discrete(4).isolated_points(),
            SubsetMask::full(4)
        );
        assert_eq!(split().isolated_points(), m(&[A]));
    }

    #[test]
    fn hausdorff_examples() {
        assert!(FiniteTopology::discrete(3).is_hausdorff());
        assert!(!FiniteTopology::indiscrete(2).is_hausdorff());
        assert!(!split().is_hausdorff());
    }

    #[test]
    fn names_and_display() {
        let t = sierpinski_like();
        assert_eq!(t.to_string(), "{{}, {a,b}, {a,b,c}}");
        let t = t
            .with_names(vec!["x".into(), "y".into(), "z".into()])
            .unwrap();
        assert_eq!(t.format_set(m(&[A, C])), "{x,z}");
        assert!(t.clone().with_names(vec!["x".into()]).is_err());
        assert_eq!(default_point_name(27), "p27");
    }

    #[test]
    fn closed_sets_are_complements() {
        let s = split();
        assert_eq!(
            s.closed_sets(),
            &[m(&[]), m(&[A]), m(&[B, C]), m(&[A, B, C])]
        );
        assert_eq!(s.closure_of_point(B), m(&[B, C]));
        assert_eq!(s.closure_of_point(A), m(&[A]));
        assert!(s.is_closed(m(&[A])));
        assert!(!s.is_closed(m(&[B])));
    }
}
