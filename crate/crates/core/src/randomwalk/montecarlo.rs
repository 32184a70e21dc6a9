//! Seeded Monte Carlo estimate of the return probability on ℤ³.
//!
//! Walk `i` draws from its own ChaCha8 stream (`seed`, stream `i`), so the
//! count of returns does not depend on how walks are scheduled across threads.
//! Extending `max_steps` extends the same paths.

use rand_chacha::ChaCha8Rng;
use rand_core::{RngCore, SeedableRng};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::{Error, Result};

/// Coordinates are packed into 21-bit fields of one `i64`.
const FIELD: u32 = 21;
const STEPS: [i64; 6] = [1, -1, 1 << FIELD, -(1 << FIELD), 1 << (2 * FIELD), -(1 << (2 * FIELD))];

/// Longest horizon for which packed coordinates cannot alias.
pub const MAX_HORIZON: u64 = (1 << (FIELD - 1)) - 1;

/// Digits of base 6 drawn from one `u64`; the bias per digit is below `6¹²/2⁶⁴`.
const DIGITS_PER_DRAW: u32 = 12;

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct WalkEstimate {
    pub n_walks: u64,
    pub max_steps: u64,
    pub returns: u64,
    pub p_hat: f64,
    pub stderr: f64,
    pub seed: u64,
}

impl WalkEstimate {
    pub fn new(n_walks: u64, max_steps: u64, returns: u64, seed: u64) -> Self {
        let n = n_walks as f64;
        let p_hat = returns as f64 / n;
        Self {
            n_walks,
            max_steps,
            returns,
            p_hat,
            stderr: (p_hat * (1.0 - p_hat) / n).sqrt(),
            seed,
        }
    }
}

fn check_params(n_walks: u64, max_steps: u64) -> Result<()> {
    if n_walks == 0 {
        return Err(Error::domain("n_walks", 0.0, "[1, inf)"));
    }
    if !(2..=MAX_HORIZON).contains(&max_steps) {
        return Err(Error::domain(
            "max_steps",
            max_steps as f64,
            "[2, 1048575]",
        ));
    }
    Ok(())
}

fn base_rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Step of the first return to the origin of walk `index`, if it happens
/// within `max_steps`.
pub fn first_return_time(base: &ChaCha8Rng, index: u64, max_steps: u64) -> Option<u64> {
    let mut rng = base.clone();
    rng.set_stream(index);
    let mut pos = 0i64;
    let mut bits = 0u64;
    let mut left = 0u32;
    for step in 1..=max_steps {
        if left == 0 {
            bits = rng.next_u64();
            left = DIGITS_PER_DRAW;
        }
        let wide = bits as u128 * 6;
        bits = wide as u64;
        left -= 1;
        pos += STEPS[(wide >> 64) as usize];
        if pos == 0 {
            return Some(step);
        }
    }
    None
}

/// First-return step of every walk (`None` for walks still away at
/// `max_steps`), in walk order.
pub fn first_return_times(n_walks: u64, max_steps: u64, seed: u64) -> Result<Vec<Option<u64>>> {
    check_params(n_walks, max_steps)?;
    let base = base_rng(seed);
    Ok((0..n_walks)
        .into_par_iter()
        .map(|i| first_return_time(&base, i, max_steps))
        .collect())
}

pub fn mc_return_probability(n_walks: u64, max_steps: u64, seed: u64) -> Result<WalkEstimate> {
    check_params(n_walks, max_steps)?;
    let base = base_rng(seed);
    let returns = (0..n_walks)
        .into_par_iter()
        .filter(|&i| first_return_time(&base, i, max_steps).is_some())
        .count() as u64;
    Ok(WalkEstimate::new(n_walks, max_steps, returns, seed))
}

/// Estimates at several horizons from a single ensemble of walks, each run to
/// the longest horizon.
pub fn mc_return_profile(n_walks: u64, horizons: &[u64], seed: u64) -> Result<Vec<WalkEstimate>> {
    let longest = horizons.iter().copied().max().ok_or_else(|| Error::Usage("no horizons given".into()))?;
    for &h in horizons {
        check_params(n_walks, h)?;
    }
    let times = first_return_times(n_walks, longest, seed)?;
    Ok(horizons
        .iter()
        .map(|&h| {
            let returns = times.iter().filter(|t| matches!(t, Some(s) if *s <= h)).count() as u64;
            WalkEstimate::new(n_walks, h, returns, seed)
        })
        .collect())
}
