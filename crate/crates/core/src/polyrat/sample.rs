use alloc::collections::BTreeMap;
use alloc::vec::Vec;
use core::sync::atomic::{AtomicU64, Ordering};

use num_bigint::BigInt;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::{PolyError, Q, RatFun, Var};

/// Seed of the evaluation cross-check.
pub const DEFAULT_SEED: u64 = 0x00c4_f0e3_5eed;

static SEED: AtomicU64 = AtomicU64::new(DEFAULT_SEED);

/// Sets the seed [`equals`] draws its points from, for the whole process.
pub fn set_seed(seed: u64) {
    SEED.store(seed, Ordering::Relaxed);
}

pub fn seed() -> u64 {
    SEED.load(Ordering::Relaxed)
}

/// Points used by [`equals`].
pub const CROSS_CHECK_POINTS: usize = 5;

const LOW: i64 = 1_000;
const HIGH: i64 = 1_000_000;
const MAX_ATTEMPTS: usize = 64;

/// Draws evaluation points in `[10^3, 10^6]` that avoid the poles of every
/// function in `funs`.
pub struct Sampler {
    rng: ChaCha8Rng,
}

impl Sampler {
    pub fn new(seed: u64) -> Self {
        Sampler { rng: ChaCha8Rng::seed_from_u64(seed) }
    }

    pub fn point(&mut self, vars: &[Var]) -> BTreeMap<Var, Q> {
        vars.iter().map(|&v| (v, Q::from_integer(BigInt::from(self.rng.random_range(LOW..=HIGH))))).collect()
    }

    /// Evaluates every function at one common random point, redrawing when a
    /// pole is hit.
    pub fn eval_all(&mut self, funs: &[&RatFun]) -> Result<Vec<Q>, PolyError> {
        let mut vars: Vec<Var> = funs.iter().flat_map(|f| f.vars()).collect();
        vars.sort_unstable();
        vars.dedup();
        let mut last_err = None;
        for _ in 0..MAX_ATTEMPTS {
            let p = self.point(&vars);
            match funs.iter().map(|f| f.eval_at(&p)).collect::<Result<Vec<_>, _>>() {
                Ok(values) => return Ok(values),
                Err(e @ PolyError::PoleAtPoint { .. }) => last_err = Some(e),
                Err(e) => return Err(e),
            }
        }
        Err(last_err.unwrap_or(PolyError::DivisionByZero))
    }
}

/// Equality of normal forms, confirmed by evaluating at seeded random
/// points. A disagreement between the two tests is a bug and panics.
pub fn equals(a: &RatFun, b: &RatFun) -> bool {
    equals_with(a, b, seed(), CROSS_CHECK_POINTS)
}

pub fn equals_with(a: &RatFun, b: &RatFun, seed: u64, points: usize) -> bool {
    let structural = a == b;
    let mut sampler = Sampler::new(seed);
    let numeric = (0..points).all(|_| {
        let v = sampler.eval_all(&[a, b]).expect("no pole-free evaluation point found");
        v[0] == v[1]
    });
    assert_eq!(structural, numeric, "normal form and evaluation disagree on {a} vs {b}");
    structural
}
