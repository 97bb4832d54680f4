//! Monte Carlo estimate of `p(n, k)`.
//!
//! # Generator
//!
//! All randomness comes from ChaCha8 (`rand_chacha::ChaCha8Rng`) seeded with
//! `seed_from_u64(seed)`. Sample `s` (0-based) consumes the 64-bit outputs
//! `s·n .. (s+1)·n` of that single stream, one per stick, each mapped to
//! `((x >> 11) + 1) · 2^-53`, which lies in `(0, 1]`.
//!
//! A run split into `chunks` pieces gives chunk `c` the samples
//! `[c·N/chunks, (c+1)·N/chunks)` and positions a fresh generator at that
//! chunk's first word with `set_word_pos`. Every sample therefore sees the
//! same sticks no matter how the run is chunked or how many threads execute
//! the chunks, and the success count is a plain integer sum.

use rand_chacha::ChaCha8Rng;
use rand_core::{RngCore, SeedableRng};
use rayon::prelude::*;
use serde::Serialize;

use crate::closedform::Problem;
use crate::error::{Error, Result};

/// Below this many successes the normal approximation is unreliable.
pub const RARE_EVENT_THRESHOLD: u64 = 10;

const UNIT: f64 = 1.0 / (1u64 << 53) as f64;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SimConfig {
    problem: Problem,
    samples: u64,
    seed: u64,
    chunks: u64,
}

impl SimConfig {
    pub fn new(problem: Problem, samples: u64, seed: u64, chunks: u64) -> Result<Self> {
        if samples == 0 {
            return Err(Error::invalid("samples must be at least 1"));
        }
        if chunks == 0 {
            return Err(Error::invalid("chunks must be at least 1"));
        }
        if chunks > samples {
            return Err(Error::invalid(format!(
                "chunks ({chunks}) must not exceed samples ({samples})"
            )));
        }
        Ok(Self {
            problem,
            samples,
            seed,
            chunks,
        })
    }

    pub fn problem(&self) -> Problem {
        self.problem
    }

    pub fn samples(&self) -> u64 {
        self.samples
    }

    pub fn seed(&self) -> u64 {
        self.seed
    }

    pub fn chunks(&self) -> u64 {
        self.chunks
    }

    fn chunk_range(&self, chunk: u64) -> (u64, u64) {
        let bound = |c: u64| ((c as u128 * self.samples as u128) / self.chunks as u128) as u64;
        (bound(chunk), bound(chunk + 1))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct SimResult {
    /// Samples in which no k-gon could be formed.
    pub successes: u64,
    pub samples: u64,
    pub estimate: f64,
    pub std_error: f64,
    pub seed: u64,
}

impl SimResult {
    fn from_counts(successes: u64, samples: u64, seed: u64) -> Self {
        let estimate = successes as f64 / samples as f64;
        Self {
            successes,
            samples,
            estimate,
            std_error: (estimate * (1.0 - estimate) / samples as f64).sqrt(),
            seed,
        }
    }

    /// `(estimate - exact) / std_error`; infinite when the standard error is
    /// zero and the estimate misses.
    pub fn z_score(&self, exact: f64) -> f64 {
        let diff = self.estimate - exact;
        if self.std_error > 0.0 {
            diff / self.std_error
        } else if diff == 0.0 {
            0.0
        } else {
            diff.signum() * f64::INFINITY
        }
    }

    pub fn rare_event(&self) -> bool {
        self.successes < RARE_EVENT_THRESHOLD
    }
}

fn check_shape(n: usize, k: usize) -> Result<()> {
    if k < 3 {
        return Err(Error::invalid(format!("k must be at least 3, got {k}")));
    }
    if n < k {
        return Err(Error::invalid(format!("need at least k = {k} sticks, got {n}")));
    }
    Ok(())
}

/// Polygon test on an ascending slice: some window of `k` consecutive sticks
/// has its `k - 1` shorter members summing to at least the longest.
fn sorted_admits_kgon(sorted: &[f64], k: usize) -> bool {
    sorted
        .windows(k)
        .any(|w| w[..k - 1].iter().sum::<f64>() >= w[k - 1])
}

/// Whether some `k` of the sticks form a (possibly degenerate) polygon,
/// checked on consecutive windows of the sorted lengths.
pub fn can_form_kgon(lengths: &[f64], k: usize) -> Result<bool> {
    check_shape(lengths.len(), k)?;
    let mut sorted = lengths.to_vec();
    sorted.sort_by(f64::total_cmp);
    Ok(sorted_admits_kgon(&sorted, k))
}

/// Brute force over every `k`-subset. Supports at most 24 sticks.
pub fn can_form_kgon_subset_oracle(lengths: &[f64], k: usize) -> Result<bool> {
    let n = lengths.len();
    check_shape(n, k)?;
    if n > 24 {
        return Err(Error::invalid(format!("subset oracle supports at most 24 sticks, got {n}")));
    }
    let mut sorted = lengths.to_vec();
    sorted.sort_by(f64::total_cmp);
    let mut subset = Vec::with_capacity(k);
    for mask in 0u32..(1 << n) {
        if mask.count_ones() as usize != k {
            continue;
        }
        subset.clear();
        subset.extend((0..n).filter(|i| mask >> i & 1 == 1).map(|i| sorted[i]));
        if subset[..k - 1].iter().sum::<f64>() >= subset[k - 1] {
            return Ok(true);
        }
    }
    Ok(false)
}

/// A fresh generator positioned at the first stick of sample `start`.
pub fn stream_at(seed: u64, sticks_per_sample: usize, start: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    // Two 32-bit words per stick.
    rng.set_word_pos(2 * start as u128 * sticks_per_sample as u128);
    rng
}

/// Stick length in `(0, 1]` from one 64-bit output.
pub fn unit_interval(x: u64) -> f64 {
    ((x >> 11) + 1) as f64 * UNIT
}

fn count_chunk(config: &SimConfig, chunk: u64) -> u64 {
    let (n, k) = (config.problem.n(), config.problem.k());
    let (start, end) = config.chunk_range(chunk);
    let mut rng = stream_at(config.seed, n, start);
    let mut sticks = vec![0.0; n];
    let mut successes = 0;
    for _ in start..end {
        for s in sticks.iter_mut() {
            *s = unit_interval(rng.next_u64());
        }
        sticks.sort_by(f64::total_cmp);
        if !sorted_admits_kgon(&sticks, k) {
            successes += 1;
        }
    }
    successes
}

/// Runs the simulation, executing chunks in parallel.
pub fn estimate(config: &SimConfig) -> SimResult {
    let successes = (0..config.chunks)
        .into_par_iter()
        .map(|c| count_chunk(config, c))
        .sum();
    SimResult::from_counts(successes, config.samples, config.seed)
}
