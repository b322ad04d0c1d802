//! Named identity suites, their reports, and the command-line front end.

pub mod cli;
mod suites;

use crate::algebra::identity::{random_point, rng};
use crate::algebra::modular::sub_mod;
use crate::algebra::{Mode, RatFunc, NV, PRIME};
use crate::error::{Error, Result};
use crate::rootdata::{build_case, weyl_elements, CaseDescriptor, FieldKind, Group};
use crate::wsformula::WeylSum;
use serde::Serialize;
use std::sync::atomic::{AtomicUsize, Ordering};
use std::sync::Mutex;
use std::time::{Duration, Instant};

pub use suites::{adjudicate_beta_variant, select_satake_completion, Adjudication};

pub const SCHEMA: u32 = 1;

pub const SUITES: [&str; 11] = [
    "normalization",
    "gamma_ratio",
    "weyl_symmetry",
    "regularity",
    "satake_reform",
    "cross_split",
    "rl_factorization",
    "cauchy",
    "l_unfold",
    "lemma_unfolding",
    "final_identity",
];

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum ModeChoice {
    Auto,
    Symbolic,
    Modular,
}

#[derive(Clone, Debug)]
pub struct SuiteConfig {
    pub mode: ModeChoice,
    pub trials: usize,
    pub seed: u64,
    /// skip cases with n above this
    pub max_rank: Option<usize>,
    /// restrict to these cases when set
    pub cases: Option<Vec<CaseDescriptor>>,
    pub threads: usize,
}

impl Default for SuiteConfig {
    fn default() -> Self {
        SuiteConfig {
            mode: ModeChoice::Auto,
            trials: crate::algebra::identity::DEFAULT_TRIALS,
            seed: 0,
            max_rank: None,
            cases: None,
            threads: std::thread::available_parallelism().map(|n| n.get()).unwrap_or(1),
        }
    }
}

impl SuiteConfig {
    /// Resolved mode for a case: symbolic below 10^6 estimated monomial operations.
    pub fn mode_for(&self, case: Option<&CaseDescriptor>) -> Mode {
        let symbolic = match self.mode {
            ModeChoice::Symbolic => true,
            ModeChoice::Modular => false,
            ModeChoice::Auto => case.is_none_or(|c| cost_estimate(c) < 1_000_000),
        };
        if symbolic {
            Mode::Symbolic
        } else {
            Mode::Modular { trials: self.trials, seed: self.seed }
        }
    }
}

/// |W_G| times the cube of the R_- dimension.
pub fn cost_estimate(case: &CaseDescriptor) -> u64 {
    let w = (weyl_elements(case, Group::V).len() * weyl_elements(case, Group::W).len()) as u64;
    let d = (case.n * case.m) as u64;
    w * d * d * d
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    Skipped,
}

#[derive(Clone, Debug, Serialize)]
pub struct CheckResult {
    pub name: String,
    pub case: Option<String>,
    pub status: Status,
    pub mode: Mode,
    /// canonical form (symbolic) or residue at the first sample point (modular)
    pub lhs: Option<String>,
    pub rhs: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub detail: Option<String>,
    #[serde(skip)]
    pub elapsed: Duration,
}

#[derive(Clone, Debug, Serialize)]
pub struct SuiteReport {
    pub schema: u32,
    pub suite: String,
    pub cases: Vec<String>,
    pub mode: ModeChoice,
    pub seed: u64,
    pub checks: Vec<CheckResult>,
    /// excluded from serialized output so reports are reproducible byte for byte
    #[serde(skip)]
    pub wall_time: Duration,
}

impl SuiteReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.status != Status::Fail)
    }

    pub fn count(&self, s: Status) -> usize {
        self.checks.iter().filter(|c| c.status == s).count()
    }
}

/// One side of a compared identity.
#[derive(Clone, Debug)]
pub enum Side {
    F(RatFunc),
    Sum(WeylSum),
}

impl Side {
    fn total(&self) -> RatFunc {
        match self {
            Side::F(f) => f.clone(),
            Side::Sum(s) => s.total(),
        }
    }

    fn eval(&self, pt: &[u64; NV]) -> Option<u64> {
        match self {
            Side::F(f) => f.eval_mod(pt, PRIME).ok(),
            Side::Sum(s) => s.eval_mod(pt),
        }
    }
}

impl From<RatFunc> for Side {
    fn from(f: RatFunc) -> Side {
        Side::F(f)
    }
}

impl From<WeylSum> for Side {
    fn from(s: WeylSum) -> Side {
        Side::Sum(s)
    }
}

/// Residue of `f` at the first nonsingular point of a fixed sequence; cheap
/// even when the canonical form is huge, and replayable.
fn fingerprint(f: &RatFunc) -> String {
    let mut r = rng(FINGERPRINT_SEED);
    for k in 0..16 {
        let pt = random_point(&mut r);
        if let Ok(x) = f.eval_mod(&pt, PRIME) {
            return format!("residue[{}]={}", k, x);
        }
    }
    "singular".into()
}

const FINGERPRINT_SEED: u64 = 0x5eed;

/// Compares the sides of each pair; the check passes when every pair agrees.
/// Equal when the quotient cancels factor by factor; avoids expanding large products.
fn same_factored(a: &RatFunc, b: &RatFunc) -> bool {
    if a.is_zero() || b.is_zero() {
        return a.is_zero() && b.is_zero();
    }
    a.checked_div(b).map(|q| q.is_one()).unwrap_or(false)
}

pub fn compare_all(name: &str, case: Option<&CaseDescriptor>, pairs: Vec<(Side, Side)>, mode: Mode) -> CheckResult {
    let t0 = Instant::now();
    let mut first: Option<(String, String)> = None;
    let mut fail: Option<(String, String, String)> = None;
    let mut trials_run = 0;
    for (k, (a, b)) in pairs.iter().enumerate() {
        match mode {
            Mode::Symbolic => {
                let (fa, fb) = (a.total(), b.total());
                let ok = same_factored(&fa, &fb) || fa.sub(&fb).is_zero();
                if first.is_none() {
                    first = Some((fingerprint(&fa), fingerprint(&fb)));
                }
                if !ok {
                    fail = Some((fingerprint(&fa), fingerprint(&fb), format!("pair {} differs", k)));
                    break;
                }
            }
            Mode::Modular { trials, seed } => {
                let mut r = rng(seed.wrapping_add(k as u64));
                let mut got = 0;
                let mut attempts = 0;
                while got < trials && attempts < 100 * trials + 100 {
                    attempts += 1;
                    let pt = random_point(&mut r);
                    let (Some(x), Some(y)) = (a.eval(&pt), b.eval(&pt)) else { continue };
                    got += 1;
                    if first.is_none() {
                        first = Some((x.to_string(), y.to_string()));
                    }
                    if sub_mod(x, y, PRIME) != 0 {
                        fail = Some((x.to_string(), y.to_string(), format!("pair {} differs at sample {}", k, got)));
                        break;
                    }
                }
                trials_run += got;
                if got < trials && fail.is_none() {
                    fail = Some((String::new(), String::new(), format!("pair {}: too many singular points", k)));
                }
                if fail.is_some() {
                    break;
                }
            }
        }
    }
    let (status, lhs, rhs, detail) = match fail {
        Some((l, r, d)) => (Status::Fail, Some(l), Some(r), Some(d)),
        None => {
            let (l, r) = first.unzip();
            let d = match mode {
                Mode::Modular { .. } => Some(format!("{} samples mod {}", trials_run, PRIME)),
                Mode::Symbolic => None,
            };
            (Status::Pass, l, r, d)
        }
    };
    CheckResult {
        name: name.to_string(),
        case: case.map(|c| c.label()),
        status,
        mode,
        lhs,
        rhs,
        detail,
        elapsed: t0.elapsed(),
    }
}

pub fn compare(
    name: &str,
    case: Option<&CaseDescriptor>,
    lhs: impl Into<Side>,
    rhs: impl Into<Side>,
    mode: Mode,
) -> CheckResult {
    compare_all(name, case, vec![(lhs.into(), rhs.into())], mode)
}

/// A check that is a predicate rather than an equality.
pub fn predicate(
    name: &str,
    case: Option<&CaseDescriptor>,
    ok: bool,
    mode: Mode,
    detail: Option<String>,
) -> CheckResult {
    CheckResult {
        name: name.to_string(),
        case: case.map(|c| c.label()),
        status: if ok { Status::Pass } else { Status::Fail },
        mode,
        lhs: None,
        rhs: None,
        detail,
        elapsed: Duration::ZERO,
    }
}

pub fn errored(name: &str, case: Option<&CaseDescriptor>, mode: Mode, e: &Error) -> CheckResult {
    predicate(name, case, false, mode, Some(format!("error: {}", e)))
}

type Job<'a> = Box<dyn Fn() -> CheckResult + Send + Sync + 'a>;

/// Runs jobs on a small pool; results keep job order.
fn run_jobs(jobs: Vec<Job<'_>>, threads: usize) -> Vec<CheckResult> {
    let n = jobs.len();
    let next = AtomicUsize::new(0);
    let out: Mutex<Vec<Option<CheckResult>>> = Mutex::new(vec![None; n]);
    std::thread::scope(|s| {
        for _ in 0..threads.max(1).min(n.max(1)) {
            s.spawn(|| loop {
                let i = next.fetch_add(1, Ordering::SeqCst);
                if i >= n {
                    break;
                }
                let t0 = Instant::now();
                let mut r = match std::panic::catch_unwind(std::panic::AssertUnwindSafe(|| jobs[i]())) {
                    Ok(r) => r,
                    Err(p) => {
                        let msg = p
                            .downcast_ref::<String>()
                            .cloned()
                            .or_else(|| p.downcast_ref::<&str>().map(|s| s.to_string()))
                            .unwrap_or_default();
                        predicate(
                            &format!("job {}", i),
                            None,
                            false,
                            Mode::Symbolic,
                            Some(format!("panicked: {}", msg)),
                        )
                    }
                };
                if r.elapsed.is_zero() {
                    r.elapsed = t0.elapsed();
                }
                out.lock().unwrap()[i] = Some(r);
            });
        }
    });
    out.into_inner().unwrap().into_iter().map(|r| r.expect("job finished")).collect()
}

pub(crate) fn case(field: FieldKind, n: usize, m: usize) -> CaseDescriptor {
    build_case(field, n, m).expect("valid grid case")
}

/// The eight-case default grid.
pub fn default_grid() -> Vec<CaseDescriptor> {
    use FieldKind::*;
    vec![
        case(Split, 1, 1),
        case(Split, 2, 2),
        case(Split, 3, 1),
        case(Split, 3, 3),
        case(Inert, 2, 2),
        case(Inert, 4, 2),
        case(Inert, 3, 1),
        case(Inert, 3, 3),
    ]
}

pub fn run_suite(name: &str, config: &SuiteConfig) -> Result<SuiteReport> {
    let t0 = Instant::now();
    if name == "all" {
        let mut checks = Vec::new();
        let mut cases = Vec::new();
        for s in SUITES {
            let r = run_suite(s, config)?;
            checks.extend(r.checks);
            for c in r.cases {
                if !cases.contains(&c) {
                    cases.push(c);
                }
            }
        }
        return Ok(SuiteReport {
            schema: SCHEMA,
            suite: "all".into(),
            cases,
            mode: config.mode,
            seed: config.seed,
            checks,
            wall_time: t0.elapsed(),
        });
    }
    let (cases, jobs) = suites::build(name, config)?;
    let checks = run_jobs(jobs, config.threads);
    Ok(SuiteReport {
        schema: SCHEMA,
        suite: name.to_string(),
        cases: cases.iter().map(|c| c.label()).collect(),
        mode: config.mode,
        seed: config.seed,
        checks,
        wall_time: t0.elapsed(),
    })
}
