//! Reference systems with known classifications, and the `verify-paper`
//! batch job that checks them alongside the exhaustive sweeps.

use std::fmt::Write as _;
use std::io::{self, Write};

use topodyn::zoo::{run_proposition_suite, verify_no_hypermixing, SuiteConfig, ZooError};
use topodyn::{evaluate, Property};

use crate::document::{parse_system, DocumentError};

use Property::*;

/// A system document and the verdicts it must receive.
#[derive(Clone, Debug)]
pub struct Fixture {
    pub name: &'static str,
    pub document: &'static str,
    pub expected: Vec<(Property, bool)>,
}

fn fixture(name: &'static str, document: &'static str, expected: &[(Property, bool)]) -> Fixture {
    Fixture {
        name,
        document,
        expected: expected.to_vec(),
    }
}

pub fn reference_fixtures() -> Vec<Fixture> {
    vec![
        fixture(
            "constant map on {{},X,{a,b}}: strongly topologically transitive, not mixing",
            r#"{"points":["a","b","c"],"opens":[["a","b"]],"map":{"a":"c","b":"c","c":"c"}}"#,
            &[(StronglyTopologicallyTransitive, true), (Mixing, false)],
        ),
        fixture(
            "collapse then feed on {{},X,{a,b}}: mixing, not strongly topologically transitive",
            r#"{"points":["a","b","c"],"opens":[["a","b"]],"map":{"a":"b","b":"b","c":"a"}}"#,
            &[(Mixing, true), (StronglyTopologicallyTransitive, false)],
        ),
        fixture(
            "three-cycle on {{},X,{a,b}}: mixing, not supermixing",
            r#"{"points":["a","b","c"],"opens":[["a","b"]],"map":{"a":"b","b":"c","c":"a"}}"#,
            &[(Mixing, true), (Supermixing, false)],
        ),
        fixture(
            "fix a, swap b and c on {{},X,{a,b}}: supermixing, not hypermixing",
            r#"{"points":["a","b","c"],"opens":[["a","b"]],"map":{"a":"a","b":"c","c":"b"}}"#,
            &[(Supermixing, true), (Hypermixing, false)],
        ),
        fixture(
            "continuous map on {{},X,{a},{b,c}}: hypertransitive, not mixing",
            r#"{"points":["a","b","c"],"opens":[["a"],["b","c"]],"map":{"a":"b","b":"a","c":"a"}}"#,
            &[(Continuous, true), (Hypertransitive, true), (Mixing, false)],
        ),
        fixture(
            "continuous map on {{},X,{a},{a,b}}: supermixing, not hypertransitive",
            r#"{"points":["a","b","c"],"opens":[["a"],["a","b"]],"map":{"a":"a","b":"c","c":"c"}}"#,
            &[
                (Continuous, true),
                (Supermixing, true),
                (Hypertransitive, false),
            ],
        ),
    ]
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Mismatch {
    pub property: Property,
    pub expected: bool,
    pub actual: bool,
}

#[derive(Clone, Debug)]
pub struct FixtureOutcome {
    pub name: &'static str,
    pub claims: Vec<(Property, bool)>,
    pub mismatches: Vec<Mismatch>,
}

impl FixtureOutcome {
    pub fn passed(&self) -> bool {
        self.mismatches.is_empty()
    }

    /// One status line, followed by one `expected/got` line per mismatch.
    pub fn report(&self) -> String {
        let claims: Vec<String> = self
            .claims
            .iter()
            .map(|(p, b)| format!("{}={}", p.name(), u8::from(*b)))
            .collect();
        let status = if self.passed() { "PASS" } else { "FAIL" };
        let mut s = format!("{status}  {} [{}]\n", self.name, claims.join(" "));
        for m in &self.mismatches {
            let _ = writeln!(
                s,
                "        {}: expected {}, got {}",
                m.property.name(),
                m.expected,
                m.actual
            );
        }
        s
    }
}

pub fn check_fixture(f: &Fixture) -> Result<FixtureOutcome, DocumentError> {
    let sys = parse_system(f.document)?.system;
    let profile = evaluate(&sys);
    let mismatches = f
        .expected
        .iter()
        .filter(|&&(p, want)| profile.holds(p) != want)
        .map(|&(p, want)| Mismatch {
            property: p,
            expected: want,
            actual: profile.holds(p),
        })
        .collect();
    Ok(FixtureOutcome {
        name: f.name,
        claims: f.expected.clone(),
        mismatches,
    })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VerifyConfig {
    pub max_points: usize,
    /// Sampled systems per size at 4 and 5 points, on top of the exhaustive
    /// universe.
    pub samples: usize,
    pub seed: u64,
}

impl Default for VerifyConfig {
    fn default() -> Self {
        VerifyConfig {
            max_points: 3,
            samples: 0,
            seed: topodyn::zoo::verify::DEFAULT_SEED,
        }
    }
}

#[derive(Debug, thiserror::Error)]
pub enum VerifyError {
    #[error(transparent)]
    Io(#[from] io::Error),
    #[error(transparent)]
    Zoo(#[from] ZooError),
    #[error("fixture does not parse: {0}")]
    Fixture(#[from] DocumentError),
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct VerifySummary {
    pub passed: usize,
    pub failed: usize,
    pub skipped: usize,
}

impl VerifySummary {
    pub fn all_passed(&self) -> bool {
        self.failed == 0
    }

    fn record(&mut self, ok: bool) -> &'static str {
        if ok {
            self.passed += 1;
            "PASS"
        } else {
            self.failed += 1;
            "FAIL"
        }
    }
}

pub const INFINITE_SHIFT: &str =
    "shift m -> m+1 on the integers with topology {{}, Z, Z minus {0}} is hypermixing";

/// Runs the fixtures, the hypermixing sweep and the invariant suite, printing
/// one line per claim.
pub fn verify_paper<W: Write + ?Sized>(
    out: &mut W,
    fixtures: &[Fixture],
    cfg: &VerifyConfig,
) -> Result<VerifySummary, VerifyError> {
    let mut summary = VerifySummary::default();

    writeln!(out, "reference systems")?;
    for f in fixtures {
        let outcome = check_fixture(f)?;
        summary.record(outcome.passed());
        write!(out, "{}", outcome.report())?;
    }

    writeln!(out, "no hypermixing map on a nontrivial finite topology")?;
    let sweep = verify_no_hypermixing(cfg.max_points)?;
    let status = summary.record(sweep.violations.is_empty());
    writeln!(
        out,
        "{status}  n <= {}: {} systems on nontrivial topologies scanned, {} hypermixing",
        cfg.max_points,
        sweep.systems_scanned(),
        sweep.violations.len()
    )?;
    for v in sweep.violations.iter().take(3) {
        writeln!(out, "        counterexample: {v}")?;
    }
    let indiscrete: usize = sweep.sizes.iter().map(|s| s.indiscrete_maps).sum();
    let status = summary.record(sweep.indiscrete_mismatches.is_empty());
    writeln!(
        out,
        "{status}  indiscrete spaces, n <= {}: hypermixing iff surjective over {} maps, {} mismatches",
        cfg.max_points,
        indiscrete,
        sweep.indiscrete_mismatches.len()
    )?;
    for v in sweep.indiscrete_mismatches.iter().take(3) {
        writeln!(out, "        counterexample: {v}")?;
    }

    writeln!(out, "invariant suite")?;
    let mut suite = SuiteConfig::exhaustive(cfg.max_points);
    if cfg.samples > 0 {
        suite = suite.with_samples(vec![4, 5], cfg.samples, cfg.seed);
    }
    let report = run_proposition_suite(&suite)?;
    for t in &report.tallies {
        summary.record(t.violations == 0);
    }
    write!(out, "{report}")?;

    summary.skipped += 1;
    writeln!(
        out,
        "SKIPPED  {INFINITE_SHIFT}: infinite space, not machine-checked"
    )?;
    writeln!(
        out,
        "{} passed, {} failed, {} skipped",
        summary.passed, summary.failed, summary.skipped
    )?;
    Ok(summary)
}
