//! Seeded randomness.
//!
//! Every random stream is a SplitMix64 generator. Trial `i` of a run with seed
//! `s` uses the generator seeded with `s + i·0x9E3779B97F4A7C15` (wrapping), so
//! trials can be replayed individually and run in any order.

use rand::{RngExt, SeedableRng};
use rand_xoshiro::SplitMix64;

use crate::exactfields::{BaseField, Elem};

pub type Rng = SplitMix64;

const GOLDEN_GAMMA: u64 = 0x9E37_79B9_7F4A_7C15;

pub fn seeded(seed: u64) -> Rng {
    SplitMix64::seed_from_u64(seed)
}

pub fn trial_rng(seed: u64, trial: u64) -> Rng {
    seeded(seed.wrapping_add(trial.wrapping_mul(GOLDEN_GAMMA)))
}

/// Uniform element of 𝔽_p, or an integer in `[-bound, bound]` over ℚ.
pub fn random_elem(rng: &mut Rng, field: BaseField, bound: i64) -> Elem {
    match field {
        BaseField::Prime(p) => field.from_i64(rng.random_range(0..p) as i64),
        BaseField::Rationals => field.from_i64(rng.random_range(-bound..=bound)),
    }
}

pub fn random_i64(rng: &mut Rng, bound: i64) -> i64 {
    rng.random_range(-bound..=bound)
}

pub fn random_index(rng: &mut Rng, n: usize) -> usize {
    rng.random_range(0..n)
}
