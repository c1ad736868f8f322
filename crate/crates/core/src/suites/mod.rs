//! Named verification suites. Each one sweeps the Lusztig data of its scope,
//! checks a family of identities on every instance and collects the
//! failures with their witnesses.

mod checks;

pub use checks::{mutation_detection, string_word, MutationStats, MUTATION_SEED, MUTATION_THRESHOLD, MUTATION_TRIALS};

use crate::error::{Error, Result};
use crate::lusztig::{enumerate_by_height_capped, LusztigDatum, DEFAULT_MAX_CELLS};
use crate::weyl_words::Rank;
use serde::Serialize;
use std::fmt;
use std::str::FromStr;
use std::time::{Duration, Instant};

pub const VERIFY_SCHEMA: &str = "mvlab.verify/1";

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Suite {
    CrystalAxioms,
    IntroIdentity,
    BzAxioms,
    PsiWeight,
    AmFormula,
    BzRaise,
    MinFormulas,
    Quiver,
    Lagrangian,
    Transition,
    Polytope,
}

impl Suite {
    pub const ALL: [Suite; 11] = [
        Suite::CrystalAxioms,
        Suite::IntroIdentity,
        Suite::BzAxioms,
        Suite::PsiWeight,
        Suite::AmFormula,
        Suite::BzRaise,
        Suite::MinFormulas,
        Suite::Quiver,
        Suite::Lagrangian,
        Suite::Transition,
        Suite::Polytope,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Suite::CrystalAxioms => "crystal-axioms",
            Suite::IntroIdentity => "intro-identity",
            Suite::BzAxioms => "bz-axioms",
            Suite::PsiWeight => "psi-weight",
            Suite::AmFormula => "am-formula",
            Suite::BzRaise => "bz-raise",
            Suite::MinFormulas => "min-formulas",
            Suite::Quiver => "quiver",
            Suite::Lagrangian => "lagrangian",
            Suite::Transition => "transition",
            Suite::Polytope => "polytope",
        }
    }

    /// The `(n, max entry sum)` pairs swept when no scope is given.
    pub fn default_scope(self) -> Vec<(usize, u32)> {
        match self {
            Suite::Lagrangian => vec![(1, 4), (2, 4), (3, 4)],
            Suite::Transition | Suite::Polytope => vec![(1, 5), (2, 5), (3, 5)],
            Suite::IntroIdentity => vec![(2, 0)],
            _ => vec![(1, 5), (2, 5), (3, 5), (4, 3)],
        }
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Suite {
    type Err = Error;
    fn from_str(s: &str) -> Result<Suite> {
        Suite::ALL
            .into_iter()
            .find(|x| x.name() == s)
            .ok_or_else(|| Error::Parse(format!("unknown suite {s:?}; expected one of {}", suite_names().join(", "))))
    }
}

pub fn suite_names() -> Vec<&'static str> {
    Suite::ALL.iter().map(|s| s.name()).collect()
}

/// Which data a suite sweeps.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Scope {
    pub ranks: Vec<(Rank, u32)>,
    /// Cap on the number of data enumerated per rank.
    pub max_cells: u128,
}

impl Scope {
    pub fn default_for(suite: Suite) -> Scope {
        let ranks = suite.default_scope().into_iter().map(|(n, h)| (Rank::new(n).expect("n >= 1"), h)).collect();
        Scope { ranks, max_cells: DEFAULT_MAX_CELLS }
    }

    pub fn single(rank: Rank, max_height: u32) -> Scope {
        Scope { ranks: vec![(rank, max_height)], max_cells: DEFAULT_MAX_CELLS }
    }

    pub fn with_cap(mut self, max_cells: u128) -> Scope {
        self.max_cells = max_cells;
        self
    }

    fn data(&self, rank: Rank, max_height: u32) -> Result<Vec<LusztigDatum>> {
        Ok(enumerate_by_height_capped(rank, max_height, self.max_cells)?.collect())
    }
}

/// One failed check.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Violation {
    pub instance: String,
    pub check: String,
    pub witness: serde_json::Value,
}

#[derive(Debug, Clone, Serialize)]
pub struct VerifyReport {
    pub schema: &'static str,
    pub suite: String,
    pub instances: u64,
    pub passed: bool,
    pub violations: Vec<Violation>,
    /// Kept out of the JSON so reports compare bit for bit across runs.
    #[serde(skip)]
    pub wall_time: Duration,
}

impl VerifyReport {
    fn new(suite: Suite, instances: u64, mut violations: Vec<Violation>, wall_time: Duration) -> Self {
        violations.sort_by(|a, b| (&a.instance, &a.check).cmp(&(&b.instance, &b.check)));
        VerifyReport {
            schema: VERIFY_SCHEMA,
            suite: suite.name().to_string(),
            instances,
            passed: violations.is_empty(),
            violations,
            wall_time,
        }
    }
}

/// Counts instances and records failures for one instance key.
pub(crate) struct Tally {
    instance: String,
    pub(crate) instances: u64,
    pub(crate) violations: Vec<Violation>,
}

impl Tally {
    pub(crate) fn new(instance: impl Into<String>) -> Self {
        Tally { instance: instance.into(), instances: 0, violations: Vec::new() }
    }

    /// Counts one instance.
    pub(crate) fn instance(&mut self) {
        self.instances += 1;
    }

    pub(crate) fn check(&mut self, ok: bool, check: &str, witness: impl FnOnce() -> serde_json::Value) {
        if !ok {
            self.violations.push(Violation {
                instance: self.instance.clone(),
                check: check.to_string(),
                witness: witness(),
            });
        }
    }

    /// Records an error raised while checking as a violation.
    pub(crate) fn absorb<T>(&mut self, check: &str, r: Result<T>) -> Option<T> {
        match r {
            Ok(v) => Some(v),
            Err(e) => {
                self.check(false, check, || serde_json::json!({ "error": e.to_string() }));
                None
            }
        }
    }

    pub(crate) fn merge(&mut self, other: Tally) {
        self.instances += other.instances;
        self.violations.extend(other.violations);
    }
}

/// Runs `suite` over `scope`, in parallel on the current rayon pool.
pub fn run_suite(suite: Suite, scope: &Scope) -> Result<VerifyReport> {
    let start = Instant::now();
    let mut total = Tally::new("");
    for &(rank, max_height) in &scope.ranks {
        let tally = match suite {
            Suite::IntroIdentity => checks::intro_identity(),
            _ => {
                let data = scope.data(rank, max_height)?;
                checks::run_rank(suite, rank, &data)?
            }
        };
        total.merge(tally);
        if suite == Suite::IntroIdentity {
            break;
        }
    }
    if suite == Suite::Transition {
        total.merge(checks::adapted_replay(6)?);
    }
    if suite == Suite::BzAxioms {
        total.merge(checks::mutation_tally(scope)?);
    }
    Ok(VerifyReport::new(suite, total.instances, total.violations, start.elapsed()))
}
