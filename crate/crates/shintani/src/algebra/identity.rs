use super::modular::{sub_mod, PRIME};
use super::mono::NV;
use super::ratfunc::RatFunc;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

pub const DEFAULT_TRIALS: usize = 20;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum Mode {
    Symbolic,
    Modular { trials: usize, seed: u64 },
}

impl Mode {
    pub fn modular(seed: u64) -> Mode {
        Mode::Modular { trials: DEFAULT_TRIALS, seed }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct IdentityReport {
    pub equal: bool,
    pub mode: Mode,
    pub prime: Option<u64>,
    pub trials_run: usize,
    /// canonical forms (symbolic) or residues at the first point (modular)
    pub lhs: String,
    pub rhs: String,
}

/// Uniform random point with all coordinates nonzero.
pub fn random_point(rng: &mut ChaCha8Rng) -> [u64; NV] {
    let mut pt = [0u64; NV];
    for v in pt.iter_mut() {
        *v = rng.gen_range(1..PRIME);
    }
    pt
}

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Calls `f` at `trials` random points, skipping points where it reports
/// a singularity. Returns the values obtained.
pub fn sample_mod<T, F>(seed: u64, trials: usize, mut f: F) -> Vec<T>
where
    F: FnMut(&[u64; NV]) -> Option<T>,
{
    let mut r = rng(seed);
    let mut out = Vec::with_capacity(trials);
    let mut attempts = 0;
    while out.len() < trials {
        attempts += 1;
        assert!(attempts < 100 * trials + 100, "too many singular evaluation points");
        let pt = random_point(&mut r);
        if let Some(v) = f(&pt) {
            out.push(v);
        }
    }
    out
}

pub fn rf_identity_equal(lhs: &RatFunc, rhs: &RatFunc, mode: Mode) -> IdentityReport {
    match mode {
        Mode::Symbolic => {
            let equal = lhs.sub(rhs).is_zero();
            IdentityReport { equal, mode, prime: None, trials_run: 0, lhs: lhs.to_string(), rhs: rhs.to_string() }
        }
        Mode::Modular { trials, seed } => {
            let vals = sample_mod(seed, trials, |pt| {
                let a = lhs.eval_mod(pt, PRIME).ok()?;
                let b = rhs.eval_mod(pt, PRIME).ok()?;
                Some((a, b))
            });
            let equal = vals.iter().all(|(a, b)| sub_mod(*a, *b, PRIME) == 0);
            let (a, b) = vals.first().copied().unwrap_or((0, 0));
            IdentityReport {
                equal,
                mode,
                prime: Some(PRIME),
                trials_run: vals.len(),
                lhs: format!("{}", a),
                rhs: format!("{}", b),
            }
        }
    }
}
