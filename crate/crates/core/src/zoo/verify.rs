//! Batch verification jobs: the no-hypermixing sweep over nontrivial finite
//! spaces and the universally quantified invariant suite.

use std::fmt;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::deciders::{Analysis, Property, PropertyProfile};
use crate::dynamics::DynSystem;
use crate::mask::SubsetMask;
use crate::topology::FiniteTopology;

use super::enumerate::{enumerate_topologies, map_at, map_count};
use super::ZooError;

/// Counts for one point count of the hypermixing sweep.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SweepCount {
    pub n: usize,
    pub nontrivial_topologies: usize,
    pub systems_scanned: usize,
    pub indiscrete_maps: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HypermixingSweep {
    pub sizes: Vec<SweepCount>,
    /// Hypermixing systems on a nontrivial topology.
    pub violations: Vec<String>,
    /// Maps on the indiscrete space where hypermixing and surjectivity
    /// disagree.
    pub indiscrete_mismatches: Vec<String>,
}

impl HypermixingSweep {
    pub fn passed(&self) -> bool {
        self.violations.is_empty() && self.indiscrete_mismatches.is_empty()
    }

    pub fn systems_scanned(&self) -> usize {
        self.sizes.iter().map(|s| s.systems_scanned).sum()
    }
}

/// Checks every system with a nontrivial topology on `1..=n_max` points is
/// not hypermixing, and that on the indiscrete space hypermixing coincides
/// with surjectivity.
pub fn verify_no_hypermixing(n_max: usize) -> Result<HypermixingSweep, ZooError> {
    let mut sweep = HypermixingSweep {
        sizes: Vec::new(),
        violations: Vec::new(),
        indiscrete_mismatches: Vec::new(),
    };
    for n in 1..=n_max {
        let topologies: Vec<FiniteTopology> = enumerate_topologies(n)?.collect();
        let maps = map_count(n);
        let per_topology: Vec<(bool, Vec<String>)> = topologies
            .par_iter()
            .map(|t| {
                let trivial = t.is_trivial();
                let mut bad = Vec::new();
                for m in 0..maps {
                    let sys = DynSystem::new(t.clone(), map_at(n, m)).expect("same n");
                    let hyper = Analysis::new(&sys).hypermixing().holds;
                    if trivial {
                        if hyper != sys.map().is_surjective() {
                            bad.push(sys.to_string());
                        }
                    } else if hyper {
                        bad.push(sys.to_string());
                    }
                }
                (trivial, bad)
            })
            .collect();
        let mut count = SweepCount {
            n,
            nontrivial_topologies: 0,
            systems_scanned: 0,
            indiscrete_maps: 0,
        };
        for (trivial, bad) in per_topology {
            if trivial {
                count.indiscrete_maps += maps;
                sweep.indiscrete_mismatches.extend(bad);
            } else {
                count.nontrivial_topologies += 1;
                count.systems_scanned += maps;
                sweep.violations.extend(bad);
            }
        }
        sweep.sizes.push(count);
    }
    Ok(sweep)
}

/// Everything the invariants inspect about one system.
pub struct Facts<'a> {
    pub analysis: Analysis<'a>,
    pub profile: PropertyProfile,
    pub hc: SubsetMask,
    pub no_isolated: bool,
    pub hausdorff: bool,
    pub nondense_open: bool,
    pub nontrivial: bool,
}

impl<'a> Facts<'a> {
    pub fn new(sys: &'a DynSystem) -> Self {
        let analysis = Analysis::new(sys);
        let profile = analysis.profile();
        let hc = analysis.hypercyclic_points();
        let t = sys.topology();
        Facts {
            profile,
            hc,
            no_isolated: !t.has_isolated_points(),
            hausdorff: t.is_hausdorff(),
            nondense_open: t.has_nondense_open(),
            nontrivial: !t.is_trivial(),
            analysis,
        }
    }

    fn sys(&self) -> &DynSystem {
        self.analysis.system()
    }

    fn has(&self, p: Property) -> bool {
        self.profile.holds(p)
    }

    fn full(&self) -> SubsetMask {
        self.sys().topology().full()
    }

    fn jmix_all(&self) -> impl Iterator<Item = (usize, SubsetMask)> + '_ {
        (0..self.sys().n()).map(|x| (x, self.analysis.jmix(x)))
    }

    fn powers_keep(&self, decide: fn(&Analysis) -> bool) -> bool {
        (2..=5).all(|p| {
            let g = self.sys().with_map(self.sys().map().power(p));
            decide(&Analysis::new(&g))
        })
    }
}

/// A universally quantified claim, asserted on systems meeting `hypothesis`.
pub struct Invariant {
    pub name: &'static str,
    pub hypothesis: fn(&Facts) -> bool,
    pub claim: fn(&Facts) -> bool,
}

use Property::*;

/// All invariants, in report order.
pub static INVARIANTS: &[Invariant] = &[
    Invariant {
        name: "hypermixing implies supermixing",
        hypothesis: |f| f.has(Hypermixing),
        claim: |f| f.has(Supermixing),
    },
    Invariant {
        name: "supermixing implies mixing",
        hypothesis: |f| f.has(Supermixing),
        claim: |f| f.has(Mixing),
    },
    Invariant {
        name: "mixing implies topologically transitive",
        hypothesis: |f| f.has(Mixing),
        claim: |f| f.has(TopologicallyTransitive),
    },
    Invariant {
        name: "hypermixing implies strongly topologically transitive",
        hypothesis: |f| f.has(Hypermixing),
        claim: |f| f.has(StronglyTopologicallyTransitive),
    },
    Invariant {
        name: "strongly topologically transitive implies topologically transitive",
        hypothesis: |f| f.has(StronglyTopologicallyTransitive),
        claim: |f| f.has(TopologicallyTransitive),
    },
    Invariant {
        name: "hypertransitive implies hypercyclic",
        hypothesis: |f| f.has(Hypertransitive),
        claim: |f| f.has(Hypercyclic),
    },
    Invariant {
        name: "hypertransitive maps have no closed invariant subset",
        hypothesis: |f| f.has(Hypertransitive),
        claim: |f| !f.has(ClosedInvariantSubset),
    },
    Invariant {
        name: "continuous maps without closed invariant subsets are hypertransitive",
        hypothesis: |f| f.has(Continuous) && !f.has(ClosedInvariantSubset),
        claim: |f| f.has(Hypertransitive),
    },
    Invariant {
        name: "hypercyclic maps on spaces without isolated points are topologically transitive",
        hypothesis: |f| f.no_isolated && f.has(Hypercyclic),
        claim: |f| f.has(TopologicallyTransitive),
    },
    Invariant {
        name: "hypercyclic points are dense when there are no isolated points",
        hypothesis: |f| f.no_isolated && f.has(Hypercyclic),
        claim: |f| f.sys().topology().is_dense(f.hc),
    },
    Invariant {
        name: "continuous transitive maps on spaces without isolated points are hypercyclic",
        hypothesis: |f| f.no_isolated && f.has(Continuous) && f.has(TopologicallyTransitive),
        claim: |f| f.has(Hypercyclic),
    },
    Invariant {
        name: "finite-union strong transitivity coincides with strong topological transitivity",
        hypothesis: |_| true,
        claim: |f| f.has(StronglyTransitiveFinite) == f.has(StronglyTopologicallyTransitive),
    },
    Invariant {
        name: "no hypermixing map on a nontrivial finite space",
        hypothesis: |f| f.nontrivial,
        claim: |f| !f.has(Hypermixing),
    },
    Invariant {
        name: "powers f^2..f^5 of a supermixing map are supermixing",
        hypothesis: |f| f.has(Supermixing),
        claim: |f| f.powers_keep(|a| a.supermixing().holds),
    },
    Invariant {
        name: "powers f^2..f^5 of a hypermixing map are hypermixing",
        hypothesis: |f| f.has(Hypermixing),
        claim: |f| f.powers_keep(|a| a.hypermixing().holds),
    },
    Invariant {
        name: "strongly topologically transitive maps are onto when some nonempty open set is not dense",
        hypothesis: |f| f.nondense_open && f.has(StronglyTopologicallyTransitive),
        claim: |f| f.has(Surjective),
    },
    Invariant {
        name: "strongly topologically transitive open maps are onto",
        hypothesis: |f| f.has(OpenMap) && f.has(StronglyTopologicallyTransitive),
        claim: |f| f.has(Surjective),
    },
    Invariant {
        name: "hypermixing maps are onto",
        hypothesis: |f| f.has(Hypermixing),
        claim: |f| f.has(Surjective),
    },
    Invariant {
        name: "supermixing maps have dense range",
        hypothesis: |f| f.has(Supermixing),
        claim: |f| f.sys().topology().is_dense(f.sys().map().range()),
    },
    Invariant {
        name: "hypermixing maps are not one-to-one when some nonempty open set is not dense",
        hypothesis: |f| f.nondense_open && f.has(Hypermixing),
        claim: |f| !f.has(Injective),
    },
    Invariant {
        name: "continuous supermixing maps on Hausdorff spaces are onto",
        hypothesis: |f| f.hausdorff && f.has(Continuous) && f.has(Supermixing),
        claim: |f| f.has(Surjective),
    },
    Invariant {
        name: "continuous hypercyclic, no isolated points: mixing iff J^mix(HC) meets HC",
        hypothesis: |f| f.no_isolated && f.has(Continuous) && f.has(Hypercyclic),
        claim: |f| f.has(Mixing) == f.analysis.jmix_of_set(f.hc).intersects(f.hc),
    },
    Invariant {
        name: "continuous hypertransitive, no isolated points: mixing iff J^mix(X) nonempty iff J^mix(X) dense",
        hypothesis: |f| f.no_isolated && f.has(Continuous) && f.has(Hypertransitive),
        claim: |f| {
            let j = f.analysis.jmix_of_set(f.full());
            let mixing = f.has(Mixing);
            mixing == !j.is_empty() && mixing == f.sys().topology().is_dense(j)
        },
    },
    Invariant {
        name: "continuous hypertransitive: supermixing iff every nonempty open has nonempty liminf set",
        hypothesis: |f| f.has(Continuous) && f.has(Hypertransitive),
        claim: |f| {
            let all_nonempty = f
                .analysis
                .open_trajectories()
                .all(|(_, traj)| !traj.liminf().is_empty());
            f.has(Supermixing) == all_nonempty
        },
    },
    Invariant {
        name: "J^mix(x) is closed for continuous maps",
        hypothesis: |f| f.has(Continuous),
        claim: |f| {
            let t = f.sys().topology();
            f.jmix_all().all(|(_, j)| t.closure(j) == j)
        },
    },
    Invariant {
        name: "J^mix(x) is forward invariant for continuous maps",
        hypothesis: |f| f.has(Continuous),
        claim: |f| {
            let map = f.sys().map();
            f.jmix_all().all(|(_, j)| map.image_set(j).is_subset_of(j))
        },
    },
    Invariant {
        name: "continuous maps: mixing iff J^mix(x) = X for every x",
        hypothesis: |f| f.has(Continuous),
        claim: |f| {
            let full = f.full();
            f.has(Mixing) == f.jmix_all().all(|(_, j)| j == full)
        },
    },
];

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InvariantTally {
    pub name: &'static str,
    pub tested: usize,
    pub skipped: usize,
    pub violations: usize,
    /// The first few violating systems, in evaluation order.
    pub examples: Vec<String>,
}

const KEPT_EXAMPLES: usize = 3;

impl InvariantTally {
    fn new(name: &'static str) -> Self {
        InvariantTally {
            name,
            tested: 0,
            skipped: 0,
            violations: 0,
            examples: Vec::new(),
        }
    }

    fn merge(&mut self, other: InvariantTally) {
        self.tested += other.tested;
        self.skipped += other.skipped;
        self.violations += other.violations;
        for e in other.examples {
            if self.examples.len() < KEPT_EXAMPLES {
                self.examples.push(e);
            }
        }
    }
}

fn fresh_tallies() -> Vec<InvariantTally> {
    INVARIANTS
        .iter()
        .map(|i| InvariantTally::new(i.name))
        .collect()
}

fn merge_all(into: &mut [InvariantTally], parts: Vec<Vec<InvariantTally>>) {
    for part in parts {
        for (acc, t) in into.iter_mut().zip(part) {
            acc.merge(t);
        }
    }
}

fn tally_system(sys: &DynSystem, tallies: &mut [InvariantTally]) {
    let facts = Facts::new(sys);
    for (inv, tally) in INVARIANTS.iter().zip(tallies.iter_mut()) {
        if !(inv.hypothesis)(&facts) {
            tally.skipped += 1;
            continue;
        }
        tally.tested += 1;
        if !(inv.claim)(&facts) {
            tally.violations += 1;
            if tally.examples.len() < KEPT_EXAMPLES {
                tally.examples.push(sys.to_string());
            }
        }
    }
}

/// Universe for the invariant suite: all systems up to `exhaustive_max`
/// points, plus `samples_per_size` seeded uniform draws (topology, map) at
/// each of `sample_sizes`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SuiteConfig {
    pub exhaustive_max: usize,
    pub sample_sizes: Vec<usize>,
    pub samples_per_size: usize,
    pub seed: u64,
}

pub const DEFAULT_SEED: u64 = 0x7070_d1a5;

impl SuiteConfig {
    pub fn exhaustive(n_max: usize) -> Self {
        SuiteConfig {
            exhaustive_max: n_max,
            sample_sizes: Vec::new(),
            samples_per_size: 0,
            seed: DEFAULT_SEED,
        }
    }

    pub fn with_samples(mut self, sizes: Vec<usize>, per_size: usize, seed: u64) -> Self {
        self.sample_sizes = sizes;
        self.samples_per_size = per_size;
        self.seed = seed;
        self
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SuiteReport {
    pub config: SuiteConfig,
    pub exhaustive_systems: usize,
    pub sampled_systems: usize,
    pub tallies: Vec<InvariantTally>,
}

impl SuiteReport {
    pub fn passed(&self) -> bool {
        self.tallies.iter().all(|t| t.violations == 0)
    }

    pub fn total_violations(&self) -> usize {
        self.tallies.iter().map(|t| t.violations).sum()
    }

    pub fn tally(&self, name: &str) -> Option<&InvariantTally> {
        self.tallies.iter().find(|t| t.name == name)
    }
}

impl fmt::Display for SuiteReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(
            f,
            "universe: {} exhaustive systems (n <= {}), {} sampled (sizes {:?}, seed {})",
            self.exhaustive_systems,
            self.config.exhaustive_max,
            self.sampled_systems,
            self.config.sample_sizes,
            self.config.seed
        )?;
        for t in &self.tallies {
            let status = if t.violations == 0 { "PASS" } else { "FAIL" };
            writeln!(
                f,
                "{status}  {}: tested {}, skipped {}, violations {}",
                t.name, t.tested, t.skipped, t.violations
            )?;
            for e in &t.examples {
                writeln!(f, "        counterexample: {e}")?;
            }
        }
        Ok(())
    }
}

const SAMPLE_CHUNK: usize = 256;

/// Evaluates every entry of [`INVARIANTS`] over the configured universe.
pub fn run_proposition_suite(config: &SuiteConfig) -> Result<SuiteReport, ZooError> {
    let mut tallies = fresh_tallies();
    let mut exhaustive_systems = 0;

    for n in 1..=config.exhaustive_max {
        let topologies: Vec<FiniteTopology> = enumerate_topologies(n)?.collect();
        let maps = map_count(n);
        let parts: Vec<Vec<InvariantTally>> = topologies
            .par_iter()
            .map(|t| {
                let mut local = fresh_tallies();
                for m in 0..maps {
                    let sys = DynSystem::new(t.clone(), map_at(n, m)).expect("same n");
                    tally_system(&sys, &mut local);
                }
                local
            })
            .collect();
        merge_all(&mut tallies, parts);
        exhaustive_systems += topologies.len() * maps;
    }

    let mut rng = ChaCha8Rng::seed_from_u64(config.seed);
    let mut sampled_systems = 0;
    for &n in &config.sample_sizes {
        let topologies: Vec<FiniteTopology> = enumerate_topologies(n)?.collect();
        let maps = map_count(n);
        let draws: Vec<(usize, usize)> = (0..config.samples_per_size)
            .map(|_| (rng.gen_range(0..topologies.len()), rng.gen_range(0..maps)))
            .collect();
        let parts: Vec<Vec<InvariantTally>> = draws
            .par_chunks(SAMPLE_CHUNK)
            .map(|chunk| {
                let mut local = fresh_tallies();
                for &(t, m) in chunk {
                    let sys = DynSystem::new(topologies[t].clone(), map_at(n, m)).expect("same n");
                    tally_system(&sys, &mut local);
                }
                local
            })
            .collect();
        merge_all(&mut tallies, parts);
        sampled_systems += draws.len();
    }

    Ok(SuiteReport {
        config: config.clone(),
        exhaustive_systems,
        sampled_systems,
        tallies,
    })
}
