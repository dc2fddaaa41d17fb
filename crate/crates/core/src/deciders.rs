//! Exact deciders for the transitivity and mixing hierarchy of a finite
//! dynamical system, each returning a verdict together with evidence.
//!
//! Quantification over "nonempty open `U`" always runs over the open sets in
//! canonical (ascending mask) order, so the reported witness is the first
//! violating set or pair in that order.
//!
//! # `J^mix` on a finite space
//!
//! `J^mix(x)` is the set of `y` for which there are points `x_k → x` with
//! `f^k(x_k) → y`. In a finite space a sequence converges to `x` exactly when
//! it eventually stays inside the minimal neighbourhood `N(x)`. Hence `y`
//! belongs to `J^mix(x)` iff for all large `k` the set `f^k(N(x))` meets
//! `N(y)`: given that, pick `x_k ∈ N(x)` with `f^k(x_k) ∈ N(y)`; conversely a
//! witnessing sequence puts a point of `f^k(N(x))` in `N(y)` from some `k` on.
//! "For all large `k`" is evaluated on the periodic block of the trajectory
//! of `N(x)`.

use std::fmt;
use std::str::FromStr;

use thiserror::Error;

use crate::dynamics::{DynSystem, SetTrajectory};
use crate::mask::SubsetMask;

/// Every decided property, in the fixed order used for profile vectors and
/// atlas columns.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Property {
    Hypercyclic,
    Hypertransitive,
    TopologicallyTransitive,
    StronglyTopologicallyTransitive,
    StronglyTransitiveFinite,
    Mixing,
    Supermixing,
    Hypermixing,
    ClosedInvariantSubset,
    Continuous,
    OpenMap,
    Surjective,
    Injective,
}

impl Property {
    pub const COUNT: usize = 13;

    pub const ALL: [Property; Property::COUNT] = [
        Property::Hypercyclic,
        Property::Hypertransitive,
        Property::TopologicallyTransitive,
        Property::StronglyTopologicallyTransitive,
        Property::StronglyTransitiveFinite,
        Property::Mixing,
        Property::Supermixing,
        Property::Hypermixing,
        Property::ClosedInvariantSubset,
        Property::Continuous,
        Property::OpenMap,
        Property::Surjective,
        Property::Injective,
    ];

    /// Kebab-case name used on the command line and in output files.
    pub fn name(self) -> &'static str {
        match self {
            Property::Hypercyclic => "hypercyclic",
            Property::Hypertransitive => "hypertransitive",
            Property::TopologicallyTransitive => "topologically-transitive",
            Property::StronglyTopologicallyTransitive => "strongly-topologically-transitive",
            Property::StronglyTransitiveFinite => "strongly-transitive-finite",
            Property::Mixing => "mixing",
            Property::Supermixing => "supermixing",
            Property::Hypermixing => "hypermixing",
            Property::ClosedInvariantSubset => "closed-invariant-subset",
            Property::Continuous => "continuous",
            Property::OpenMap => "open-map",
            Property::Surjective => "surjective",
            Property::Injective => "injective",
        }
    }

    pub fn index(self) -> usize {
        self as usize
    }
}

impl fmt::Display for Property {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("unknown property `{0}`")]
pub struct UnknownProperty(pub String);

impl FromStr for Property {
    type Err = UnknownProperty;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let norm = s.trim().to_ascii_lowercase().replace('_', "-");
        Property::ALL
            .into_iter()
            .find(|p| p.name() == norm)
            .ok_or_else(|| UnknownProperty(s.to_string()))
    }
}

/// Evidence attached to a verdict.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Witness {
    /// A hypercyclic point, a point outside `HC(f)`, or a point not in the range.
    Point(usize),
    /// Two points with the same image.
    PointPair(usize, usize),
    /// A nonempty open set for which a universally quantified condition fails,
    /// or an open set whose preimage/image is not open.
    OpenSet(SubsetMask),
    /// An ordered pair `(U, V)` of nonempty open sets violating a condition.
    OpenPair(SubsetMask, SubsetMask),
    /// A nonempty proper closed set mapped into itself.
    ClosedSet(SubsetMask),
    /// Largest over all nonempty opens `U` of the least `s` with
    /// `U ∪ f(U) ∪ .. ∪ f^s(U) = X`.
    Bound(usize),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Verdict {
    pub holds: bool,
    pub witness: Option<Witness>,
}

impl Verdict {
    fn yes(witness: Option<Witness>) -> Self {
        Verdict {
            holds: true,
            witness,
        }
    }

    fn no(witness: Option<Witness>) -> Self {
        Verdict {
            holds: false,
            witness,
        }
    }

    fn from_violation(v: Option<Witness>) -> Self {
        match v {
            None => Verdict::yes(None),
            Some(w) => Verdict::no(Some(w)),
        }
    }

    fn from_example(e: Option<Witness>) -> Self {
        match e {
            None => Verdict::no(None),
            Some(w) => Verdict::yes(Some(w)),
        }
    }
}

/// Verdicts for every [`Property`] of one system.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct PropertyProfile {
    verdicts: [Verdict; Property::COUNT],
}

impl PropertyProfile {
    pub fn get(&self, p: Property) -> &Verdict {
        &self.verdicts[p.index()]
    }

    pub fn holds(&self, p: Property) -> bool {
        self.verdicts[p.index()].holds
    }

    /// Verdict booleans in [`Property::ALL`] order.
    pub fn bits(&self) -> [bool; Property::COUNT] {
        self.verdicts.map(|v| v.holds)
    }

    pub fn iter(&self) -> impl Iterator<Item = (Property, &Verdict)> {
        Property::ALL.into_iter().zip(self.verdicts.iter())
    }
}

/// A named implication that every profile must satisfy.
pub type LatticeRule = (&'static str, fn(&PropertyProfile) -> bool);

pub const LATTICE_RULES: &[LatticeRule] = &[
    ("hypermixing implies supermixing", |p| {
        !p.holds(Property::Hypermixing) || p.holds(Property::Supermixing)
    }),
    ("supermixing implies mixing", |p| {
        !p.holds(Property::Supermixing) || p.holds(Property::Mixing)
    }),
    ("mixing implies topologically transitive", |p| {
        !p.holds(Property::Mixing) || p.holds(Property::TopologicallyTransitive)
    }),
    (
        "hypermixing implies strongly topologically transitive",
        |p| !p.holds(Property::Hypermixing) || p.holds(Property::StronglyTopologicallyTransitive),
    ),
    (
        "strongly topologically transitive implies topologically transitive",
        |p| {
            !p.holds(Property::StronglyTopologicallyTransitive)
                || p.holds(Property::TopologicallyTransitive)
        },
    ),
    (
        "finite-union strong transitivity coincides with strong topological transitivity",
        |p| {
            p.holds(Property::StronglyTransitiveFinite)
                == p.holds(Property::StronglyTopologicallyTransitive)
        },
    ),
    ("hypertransitive implies hypercyclic", |p| {
        !p.holds(Property::Hypertransitive) || p.holds(Property::Hypercyclic)
    }),
    (
        "hypertransitive maps have no closed invariant subset",
        |p| !p.holds(Property::Hypertransitive) || !p.holds(Property::ClosedInvariantSubset),
    ),
    (
        "continuous maps without closed invariant subsets are hypertransitive",
        |p| {
            !p.holds(Property::Continuous)
                || p.holds(Property::ClosedInvariantSubset)
                || p.holds(Property::Hypertransitive)
        },
    ),
];

/// First lattice rule the profile breaks.
pub fn check_lattice(profile: &PropertyProfile) -> Result<(), &'static str> {
    match LATTICE_RULES.iter().find(|(_, rule)| !rule(profile)) {
        Some((name, _)) => Err(name),
        None => Ok(()),
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DecideError {
    #[error("profile violates `{rule}` for system {system}")]
    LatticeViolation { rule: &'static str, system: String },
}

/// Trajectories of every nonempty open set of a system, computed once and
/// shared by all deciders.
pub struct Analysis<'a> {
    sys: &'a DynSystem,
    trajectories: Vec<SetTrajectory>,
}

impl<'a> Analysis<'a> {
    pub fn new(sys: &'a DynSystem) -> Self {
        let f = sys.map();
        let trajectories = sys
            .topology()
            .nonempty_opens()
            .iter()
            .map(|&u| f.trajectory(u))
            .collect();
        Analysis { sys, trajectories }
    }

    pub fn system(&self) -> &DynSystem {
        self.sys
    }

    fn full(&self) -> SubsetMask {
        self.sys.topology().full()
    }

    /// Nonempty opens paired with their trajectories, canonical order.
    pub fn open_trajectories(&self) -> impl Iterator<Item = (SubsetMask, &SetTrajectory)> {
        self.sys
            .topology()
            .nonempty_opens()
            .iter()
            .copied()
            .zip(self.trajectories.iter())
    }

    fn trajectory_of_open(&self, u: SubsetMask) -> &SetTrajectory {
        let idx = self
            .sys
            .topology()
            .nonempty_opens()
            .binary_search(&u)
            .expect("set is open");
        &self.trajectories[idx]
    }

    pub fn hypercyclic_points(&self) -> SubsetMask {
        let t = self.sys.topology();
        let f = self.sys.map();
        (0..t.n()).filter(|&x| t.is_dense(f.orbit(x))).collect()
    }

    pub fn hypercyclic(&self) -> Verdict {
        Verdict::from_example(self.hypercyclic_points().first().map(Witness::Point))
    }

    pub fn hypertransitive(&self) -> Verdict {
        let outside = self.hypercyclic_points().complement(self.sys.n());
        Verdict::from_violation(outside.first().map(Witness::Point))
    }

    pub fn topologically_transitive(&self) -> Verdict {
        let opens = self.sys.topology().nonempty_opens();
        let violation = self.open_trajectories().find_map(|(u, traj)| {
            let reached = traj.union();
            opens
                .iter()
                .find(|v| !reached.intersects(**v))
                .map(|&v| Witness::OpenPair(u, v))
        });
        Verdict::from_violation(violation)
    }

    pub fn strongly_topologically_transitive(&self) -> Verdict {
        let f = self.sys.map();
        let full = self.full();
        let violation = self
            .sys
            .topology()
            .nonempty_opens()
            .iter()
            .find(|&&u| f.forward_union(u) != full)
            .map(|&u| Witness::OpenSet(u));
        Verdict::from_violation(violation)
    }

    /// Finite-union variant: every nonempty open `U` satisfies
    /// `U ∪ .. ∪ f^s(U) = X` for some `s`; the witness is the largest
    /// such least `s`.
    pub fn strongly_transitive_finite(&self) -> Verdict {
        let full = self.full();
        let mut bound = 0;
        for (u, traj) in self.open_trajectories() {
            let mut acc = SubsetMask::EMPTY;
            let reached = traj.snapshots.iter().position(|&s| {
                acc |= s;
                acc == full
            });
            match reached {
                Some(s) => bound = bound.max(s),
                None => return Verdict::no(Some(Witness::OpenSet(u))),
            }
        }
        Verdict::yes(Some(Witness::Bound(bound)))
    }

    pub fn mixing(&self) -> Verdict {
        let opens = self.sys.topology().nonempty_opens();
        let violation = self.open_trajectories().find_map(|(u, traj)| {
            opens
                .iter()
                .find(|&&v| traj.cycle().iter().any(|s| !s.intersects(v)))
                .map(|&v| Witness::OpenPair(u, v))
        });
        Verdict::from_violation(violation)
    }

    pub fn supermixing(&self) -> Verdict {
        let t = self.sys.topology();
        let violation = self
            .open_trajectories()
            .find(|(_, traj)| !t.is_dense(traj.liminf()))
            .map(|(u, _)| Witness::OpenSet(u));
        Verdict::from_violation(violation)
    }

    pub fn hypermixing(&self) -> Verdict {
        let full = self.full();
        let violation = self
            .open_trajectories()
            .find(|(_, traj)| traj.liminf() != full)
            .map(|(u, _)| Witness::OpenSet(u));
        Verdict::from_violation(violation)
    }

    /// First nonempty proper closed `E` (canonical order) with `f(E) ⊆ E`.
    pub fn closed_invariant_subset(&self) -> Option<SubsetMask> {
        let full = self.full();
        let f = self.sys.map();
        self.sys
            .topology()
            .closed_sets()
            .iter()
            .copied()
            .filter(|&e| !e.is_empty() && e != full)
            .find(|&e| f.image_set(e).is_subset_of(e))
    }

    pub fn jmix(&self, x: usize) -> SubsetMask {
        let t = self.sys.topology();
        let cycle = self.trajectory_of_open(t.minimal_neighborhood(x)).cycle();
        (0..t.n())
            .filter(|&y| {
                let ny = t.minimal_neighborhood(y);
                cycle.iter().all(|s| s.intersects(ny))
            })
            .collect()
    }

    pub fn jmix_of_set(&self, b: SubsetMask) -> SubsetMask {
        b.iter()
            .fold(SubsetMask::EMPTY, |acc, x| acc | self.jmix(x))
    }

    /// Every verdict, without the lattice check.
    pub fn profile(&self) -> PropertyProfile {
        let sys = self.sys;
        let f = sys.map();
        let verdicts = Property::ALL.map(|p| match p {
            Property::Hypercyclic => self.hypercyclic(),
            Property::Hypertransitive => self.hypertransitive(),
            Property::TopologicallyTransitive => self.topologically_transitive(),
            Property::StronglyTopologicallyTransitive => self.strongly_topologically_transitive(),
            Property::StronglyTransitiveFinite => self.strongly_transitive_finite(),
            Property::Mixing => self.mixing(),
            Property::Supermixing => self.supermixing(),
            Property::Hypermixing => self.hypermixing(),
            Property::ClosedInvariantSubset => {
                Verdict::from_example(self.closed_invariant_subset().map(Witness::ClosedSet))
            }
            Property::Continuous => {
                Verdict::from_violation(sys.discontinuity().map(Witness::OpenSet))
            }
            Property::OpenMap => {
                Verdict::from_violation(sys.non_open_image().map(Witness::OpenSet))
            }
            Property::Surjective => {
                let missed = f.range().complement(sys.n());
                Verdict::from_violation(missed.first().map(Witness::Point))
            }
            Property::Injective => {
                Verdict::from_violation(f.collision().map(|(x, y)| Witness::PointPair(x, y)))
            }
        });
        PropertyProfile { verdicts }
    }
}

pub fn hypercyclic_points(sys: &DynSystem) -> SubsetMask {
    Analysis::new(sys).hypercyclic_points()
}

pub fn is_hypercyclic(sys: &DynSystem) -> Verdict {
    Analysis::new(sys).hypercyclic()
}

pub fn is_hypertransitive(sys: &DynSystem) -> Verdict {
    Analysis::new(sys).hypertransitive()
}

pub fn is_topologically_transitive(sys: &DynSystem) -> Verdict {
    Analysis::new(sys).topologically_transitive()
}

pub fn is_strongly_topologically_transitive(sys: &DynSystem) -> Verdict {
    Analysis::new(sys).strongly_topologically_transitive()
}

pub fn is_strongly_transitive_finite(sys: &DynSystem) -> Verdict {
    Analysis::new(sys).strongly_transitive_finite()
}

pub fn is_mixing(sys: &DynSystem) -> Verdict {
    Analysis::new(sys).mixing()
}

pub fn is_supermixing(sys: &DynSystem) -> Verdict {
    Analysis::new(sys).supermixing()
}

pub fn is_hypermixing(sys: &DynSystem) -> Verdict {
    Analysis::new(sys).hypermixing()
}

pub fn has_closed_invariant_subset(sys: &DynSystem) -> Option<SubsetMask> {
    Analysis::new(sys).closed_invariant_subset()
}

pub fn jmix(sys: &DynSystem, x: usize) -> SubsetMask {
    Analysis::new(sys).jmix(x)
}

pub fn jmix_of_set(sys: &DynSystem, b: SubsetMask) -> SubsetMask {
    Analysis::new(sys).jmix_of_set(b)
}

/// All verdicts without the lattice check.
pub fn evaluate(sys: &DynSystem) -> PropertyProfile {
    Analysis::new(sys).profile()
}

/// All verdicts; a profile breaking [`LATTICE_RULES`] is reported as an
/// error carrying the offending system.
pub fn classify(sys: &DynSystem) -> Result<PropertyProfile, DecideError> {
    let profile = evaluate(sys);
    check_lattice(&profile).map_err(|rule| DecideError::LatticeViolation {
        rule,
        system: sys.to_string(),
    })?;
    Ok(profile)
}
