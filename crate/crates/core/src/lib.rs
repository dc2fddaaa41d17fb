//! Exact analysis of self-maps on finite topological spaces.
//!
//! Given a finite topology and a self-map, this crate decides hypercyclicity,
//! hypertransitivity, topological transitivity, strong topological
//! transitivity, mixing, supermixing and hypermixing, computes `J^mix` limit
//! sets, and enumerates every small system to search for counterexamples or
//! to check implications between these properties exhaustively.
//!
//! Every infinite union or intersection over the sequence `f^k(U)` is made
//! finite by the eventual periodicity of set iteration
//! (see [`dynamics::SetTrajectory`]).

pub mod deciders;
pub mod dynamics;
pub mod mask;
pub mod topology;
pub mod zoo;

pub use deciders::{
    check_lattice, classify, evaluate, has_closed_invariant_subset, hypercyclic_points,
    is_hypercyclic, is_hypermixing, is_hypertransitive, is_mixing,
    is_strongly_topologically_transitive, is_strongly_transitive_finite, is_supermixing,
    is_topologically_transitive, jmix, jmix_of_set, Analysis, DecideError, Property,
    PropertyProfile, UnknownProperty, Verdict, Witness,
};
pub use dynamics::{DynSystem, MapError, SelfMap, SetTrajectory};
pub use mask::{SubsetMask, MAX_POINTS};
pub use topology::{default_point_name, validate_topology, FiniteTopology, TopologyError};
pub use zoo::ZooError;
