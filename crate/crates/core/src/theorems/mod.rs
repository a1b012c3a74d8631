//! One verification procedure per result. Every procedure recomputes its
//! certificate from the lower layers and never consults cached values, so a
//! perturbed table of invariant forms shows up as failing entries.

mod circle;
mod cocalibration;
mod hodge;
mod metric;
mod nearly_parallel;
mod samples;
mod structure;
pub mod sweep;

use std::fmt;
use std::str::FromStr;
use std::time::{Duration, Instant};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::exterior::Form;
use crate::gwistor::{InvariantForms, Mutation};
use crate::scalars::{Poly, Ring, ScaledScalar};

pub use circle::verify_sasaki_circle;
pub use cocalibration::{verify_cocalibration, verify_w3_and_norm};
pub use hodge::verify_hodge_theorem;
pub use metric::{verify_frames, verify_metric};
pub use nearly_parallel::{displayed_system, regenerated_system, verify_nearly_parallel};
pub use samples::stable_samples;
pub use structure::{verify_bse1, verify_curvature, verify_dsigma_never_vanishes, verify_independence};

/// Seed used when none is given.
pub const DEFAULT_SEED: u64 = 20_110_705;

/// One checked identity.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CertEntry {
    pub claim: String,
    pub lhs: String,
    pub rhs: String,
    pub equal: bool,
}

/// Outcome of one verification procedure. `passed` holds exactly when every
/// certificate entry is an equality.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct Verdict {
    pub name: String,
    pub passed: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
    pub certificate: Vec<CertEntry>,
    #[serde(skip)]
    pub elapsed: Duration,
}

impl Verdict {
    pub fn failures(&self) -> impl Iterator<Item = &CertEntry> {
        self.certificate.iter().filter(|e| !e.equal)
    }

    pub fn entry(&self, claim: &str) -> Option<&CertEntry> {
        self.certificate.iter().find(|e| e.claim == claim)
    }
}

/// Accumulates certificate entries.
#[derive(Default)]
pub(crate) struct Certificate(Vec<CertEntry>);

impl Certificate {
    pub fn check(&mut self, claim: impl Into<String>, lhs: impl Into<String>, rhs: impl Into<String>, equal: bool) {
        self.0.push(CertEntry { claim: claim.into(), lhs: lhs.into(), rhs: rhs.into(), equal });
    }

    pub fn forms<C: Ring>(&mut self, claim: impl Into<String>, a: &Form<C>, b: &Form<C>) -> bool {
        let eq = a.same_as(b);
        self.check(claim, a.normalized().to_string(), b.normalized().to_string(), eq);
        eq
    }

    pub fn polys(&mut self, claim: impl Into<String>, a: &Poly, b: &Poly) -> bool {
        let eq = a == b;
        self.check(claim, a.render(), b.render(), eq);
        eq
    }

    pub fn fact(&mut self, claim: impl Into<String>, lhs: impl Into<String>, rhs: impl Into<String>) {
        self.check(claim, lhs, rhs, true);
    }

    /// Records a computation that could not be carried out.
    pub fn error(&mut self, claim: impl Into<String>, err: impl fmt::Display) {
        self.check(claim, format!("error: {err}"), "a value", false);
    }

    /// Runs `f`, recording any error under `claim`.
    pub fn attempt<E: fmt::Display>(&mut self, claim: &str, f: impl FnOnce(&mut Self) -> Result<(), E>) {
        if let Err(e) = f(self) {
            self.error(claim, e);
        }
    }

    pub fn finish(self, name: &str, seed: Option<u64>, start: Instant) -> Verdict {
        let passed = !self.0.is_empty() && self.0.iter().all(|e| e.equal);
        Verdict { name: name.into(), passed, seed, certificate: self.0, elapsed: start.elapsed() }
    }
}

/// Inputs shared by every procedure.
#[derive(Clone, Debug)]
pub struct Context {
    pub forms: InvariantForms,
    pub seed: u64,
}

impl Default for Context {
    fn default() -> Self {
        Context { forms: InvariantForms::standard(), seed: DEFAULT_SEED }
    }
}

impl Context {
    pub fn with_seed(seed: u64) -> Self {
        Context { seed, ..Context::default() }
    }

    /// The same context over a perturbed table; `None` if the mutation does
    /// not name an existing word.
    pub fn mutated(&self, m: Mutation) -> Option<Self> {
        Some(Context { forms: InvariantForms::with_mutation(m)?, seed: self.seed })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Suite {
    Bse1,
    Metric,
    Frames,
    Hodge,
    Dsigma,
    Cocalib,
    Circle,
    W3Norm,
    Np,
    Curvature,
    Independence,
}

impl Suite {
    pub const ALL: [Suite; 11] = [
        Suite::Bse1,
        Suite::Metric,
        Suite::Frames,
        Suite::Hodge,
        Suite::Dsigma,
        Suite::Cocalib,
        Suite::Circle,
        Suite::W3Norm,
        Suite::Np,
        Suite::Curvature,
        Suite::Independence,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Suite::Bse1 => "bse1",
            Suite::Metric => "metric",
            Suite::Frames => "frames",
            Suite::Hodge => "hodge",
            Suite::Dsigma => "dsigma",
            Suite::Cocalib => "cocalib",
            Suite::Circle => "circle",
            Suite::W3Norm => "w3norm",
            Suite::Np => "np",
            Suite::Curvature => "curvature",
            Suite::Independence => "independence",
        }
    }

    pub fn run(self, ctx: &Context) -> Verdict {
        match self {
            Suite::Bse1 => verify_bse1(ctx),
            Suite::Metric => verify_metric(ctx),
            Suite::Frames => verify_frames(ctx),
            Suite::Hodge => verify_hodge_theorem(ctx),
            Suite::Dsigma => verify_dsigma_never_vanishes(ctx),
            Suite::Cocalib => verify_cocalibration(ctx),
            Suite::Circle => verify_sasaki_circle(ctx),
            Suite::W3Norm => verify_w3_and_norm(ctx),
            Suite::Np => verify_nearly_parallel(ctx),
            Suite::Curvature => verify_curvature(ctx),
            Suite::Independence => verify_independence(ctx),
        }
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Suite {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Suite::ALL
            .into_iter()
            .find(|x| x.name() == s)
            .ok_or_else(|| format!("unknown suite {s:?}"))
    }
}

/// Runs the given suites concurrently; the result is ordered by name and
/// every verdict records the seed of the run.
pub fn run_suites(suites: &[Suite], ctx: &Context) -> Vec<Verdict> {
    let mut out: Vec<Verdict> = suites
        .par_iter()
        .map(|s| {
            let mut v = s.run(ctx);
            v.seed.get_or_insert(ctx.seed);
            v
        })
        .collect();
    out.sort_by(|a, b| a.name.cmp(&b.name));
    out
}

pub fn verify_all(ctx: &Context) -> Vec<Verdict> {
    run_suites(&Suite::ALL, ctx)
}

pub fn all_passed(verdicts: &[Verdict]) -> bool {
    verdicts.iter().all(|v| v.passed)
}

pub fn render_json(verdicts: &[Verdict]) -> String {
    serde_json::to_string_pretty(verdicts).expect("verdicts serialize")
}

/// Reads verdicts written by [`render_json`].
pub fn parse_json(text: &str) -> Result<Vec<Verdict>, serde_json::Error> {
    serde_json::from_str(text)
}

/// One line per verdict, then one indented line per failing entry.
pub fn render_table(verdicts: &[Verdict]) -> String {
    let width = verdicts.iter().map(|v| v.name.len()).max().unwrap_or(4);
    let mut out = String::new();
    for v in verdicts {
        let ok = v.certificate.iter().filter(|e| e.equal).count();
        out += &format!(
            "{:<width$}  {}  {}/{} entries\n",
            v.name,
            if v.passed { "PASS" } else { "FAIL" },
            ok,
            v.certificate.len()
        );
        for e in v.failures() {
            out += &format!("    {}: {} != {}\n", e.claim, clip(&e.lhs), clip(&e.rhs));
        }
    }
    out
}

fn clip(s: &str) -> String {
    const MAX: usize = 160;
    if s.chars().count() <= MAX {
        s.to_string()
    } else {
        format!("{}...", s.chars().take(MAX).collect::<String>())
    }
}

/// The polynomial behind a scalar whose radical prefactors cancel.
pub(crate) fn as_poly(s: &ScaledScalar) -> Result<Poly, crate::scalars::ScalarError> {
    let e = s.expand();
    let mut out = Poly::zero();
    for (p, b) in e.terms() {
        if !p.is_one() {
            return Err(crate::scalars::ScalarError::Unsupported(format!("radical prefactor in {}", e.render())));
        }
        out = &out + b;
    }
    Ok(out)
}
