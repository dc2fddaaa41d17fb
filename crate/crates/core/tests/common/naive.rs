//! Brute-force deciders that iterate a fixed horizon of `2·2^n + 2` steps and
//! evaluate truncated unions and intersections directly. They share nothing
//! with the cycle-based deciders beyond `SelfMap::apply` and the list of open
//! sets.

#![allow(dead_code)]

use topodyn::{DynSystem, SubsetMask};

pub fn horizon(n: usize) -> usize {
    2 * (1 << n) + 2
}

/// Latest start index considered for "from some index on".
fn last_start(n: usize) -> usize {
    1 << n
}

fn full(sys: &DynSystem) -> SubsetMask {
    SubsetMask::from_bits(if sys.n() == 64 {
        u64::MAX
    } else {
        (1u64 << sys.n()) - 1
    })
}

fn nonempty_opens(sys: &DynSystem) -> Vec<SubsetMask> {
    sys.topology()
        .opens()
        .iter()
        .copied()
        .filter(|o| !o.is_empty())
        .collect()
}

/// `f^k(U)` for `k = 0..=horizon`, each point pushed forward `k` times.
pub fn iterates(sys: &DynSystem, u: SubsetMask) -> Vec<SubsetMask> {
    let f = sys.map();
    (0..=horizon(sys.n()))
        .map(|k| {
            u.iter()
                .map(|x| (0..k).fold(x, |y, _| f.apply(y)))
                .collect()
        })
        .collect()
}

pub fn is_dense(sys: &DynSystem, s: SubsetMask) -> bool {
    nonempty_opens(sys).iter().all(|o| o.intersects(s))
}

pub fn min_nbhd(sys: &DynSystem, x: usize) -> SubsetMask {
    nonempty_opens(sys)
        .into_iter()
        .filter(|o| o.contains(x))
        .fold(full(sys), |acc, o| acc & o)
}

/// `⋃_{i ≤ 2^n} ⋂_{i ≤ k ≤ horizon} f^k(U)`.
pub fn liminf(sys: &DynSystem, u: SubsetMask) -> SubsetMask {
    let seq = iterates(sys, u);
    (0..=last_start(sys.n()))
        .map(|i| seq[i..].iter().fold(full(sys), |acc, &s| acc & s))
        .fold(SubsetMask::EMPTY, |acc, s| acc | s)
}

/// Some start `N ≤ 2^n` after which every iterate up to the horizon meets `v`.
fn eventually_meets(seq: &[SubsetMask], n: usize, v: SubsetMask) -> bool {
    (0..=last_start(n)).any(|start| seq[start..].iter().all(|s| s.intersects(v)))
}

pub fn topologically_transitive(sys: &DynSystem) -> bool {
    let opens = nonempty_opens(sys);
    opens.iter().all(|&u| {
        let seq = iterates(sys, u);
        opens.iter().all(|&v| seq.iter().any(|s| s.intersects(v)))
    })
}

pub fn strongly_topologically_transitive(sys: &DynSystem) -> bool {
    nonempty_opens(sys).iter().all(|&u| {
        iterates(sys, u)
            .into_iter()
            .fold(SubsetMask::EMPTY, |acc, s| acc | s)
            == full(sys)
    })
}

pub fn mixing(sys: &DynSystem) -> bool {
    let opens = nonempty_opens(sys);
    opens.iter().all(|&u| {
        let seq = iterates(sys, u);
        opens.iter().all(|&v| eventually_meets(&seq, sys.n(), v))
    })
}

pub fn supermixing(sys: &DynSystem) -> bool {
    nonempty_opens(sys)
        .iter()
        .all(|&u| is_dense(sys, liminf(sys, u)))
}

pub fn hypermixing(sys: &DynSystem) -> bool {
    nonempty_opens(sys)
        .iter()
        .all(|&u| liminf(sys, u) == full(sys))
}

pub fn jmix(sys: &DynSystem, x: usize) -> SubsetMask {
    let seq = iterates(sys, min_nbhd(sys, x));
    (0..sys.n())
        .filter(|&y| eventually_meets(&seq, sys.n(), min_nbhd(sys, y)))
        .collect()
}

pub fn hypercyclic_points(sys: &DynSystem) -> SubsetMask {
    let f = sys.map();
    (0..sys.n())
        .filter(|&x| {
            let orbit: SubsetMask = (0..=sys.n())
                .scan(x, |y, _| {
                    let cur = *y;
                    *y = f.apply(cur);
                    Some(cur)
                })
                .collect();
            is_dense(sys, orbit)
        })
        .collect()
}

/// First disagreement between the cycle-based deciders and these, if any.
pub fn disagreement(sys: &DynSystem) -> Option<String> {
    use topodyn::Analysis;
    let a = Analysis::new(sys);
    let checks = [
        ("mixing", a.mixing().holds, mixing(sys)),
        ("supermixing", a.supermixing().holds, supermixing(sys)),
        ("hypermixing", a.hypermixing().holds, hypermixing(sys)),
        (
            "strongly topologically transitive",
            a.strongly_topologically_transitive().holds,
            strongly_topologically_transitive(sys),
        ),
        (
            "topologically transitive",
            a.topologically_transitive().holds,
            topologically_transitive(sys),
        ),
    ];
    for (name, fast, slow) in checks {
        if fast != slow {
            return Some(format!("{name}: cycle-based {fast}, naive {slow} on {sys}"));
        }
    }
    if a.hypercyclic_points() != hypercyclic_points(sys) {
        return Some(format!("HC(f) differs on {sys}"));
    }
    for x in 0..sys.n() {
        let (fast, slow) = (a.jmix(x), jmix(sys, x));
        if fast != slow {
            return Some(format!(
                "J^mix({x}): cycle-based {fast}, naive {slow} on {sys}"
            ));
        }
    }
    for &u in sys.topology().nonempty_opens() {
        if sys.map().liminf_set(u) != liminf(sys, u) {
            return Some(format!("liminf of {u} differs on {sys}"));
        }
    }
    None
}
