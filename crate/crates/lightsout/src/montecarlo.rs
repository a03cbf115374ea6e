//! Monte Carlo estimation of solvability probabilities.
//!
//! For each requested edge count, draws uniform isomorphism classes with the
//! rejection sampler, tests universal solvability, and aggregates success
//! counts into point estimates with Wald 95% margins. Each trial runs on its
//! own counter-derived ChaCha8 substream (a splitmix64 chain over seed, n, e
//! and trial index), so the estimate depends only on (seed, n, e, trials) —
//! never on worker count or scheduling order.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::sampler::WormaldSampler;
use crate::solver::is_universally_solvable;

/// One experiment: a sweep over edge counts at fixed vertex count.
#[derive(Debug, Clone)]
pub struct ExperimentConfig {
    pub n: usize,
    /// Edge counts to estimate, each in [0, C(n,2)].
    pub edges: Vec<usize>,
    /// Trials per edge count.
    pub trials: u64,
    pub seed: u64,
    /// Worker threads; results are identical for any value ≥ 1.
    pub workers: usize,
    /// Suppress the per-cell progress line on stderr.
    pub quiet: bool,
}

impl ExperimentConfig {
    /// Sweep over every nondeterministic edge count 1..N−1 (the cells at
    /// e = 0 and e = N hold a single class each).
    pub fn full_sweep(n: usize, trials: u64, seed: u64, workers: usize) -> Self {
        let npairs = n * n.saturating_sub(1) / 2;
        ExperimentConfig {
            n,
            edges: (1..npairs).collect(),
            trials,
            seed,
            workers,
            quiet: false,
        }
    }
}

/// Point estimate for one (n, e) cell.
#[derive(Debug, Clone, PartialEq)]
pub struct Estimate {
    pub n: usize,
    pub e: usize,
    pub trials: u64,
    pub successes: u64,
    pub p_hat: f64,
    pub moe95: f64,
}

/// Output layouts for [`emit_table`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TableFormat {
    /// `n,e,trials,successes,p_hat,moe95` rows.
    Csv,
    /// Aligned three-column-pair layout for terminal reading.
    Text,
    /// Two columns `e p_hat`, ready for gnuplot.
    Plot,
}

/// Wald 95% half-width 1.96·sqrt(p̂(1−p̂)/T).
pub fn margin_of_error(successes: u64, trials: u64) -> f64 {
    assert!(trials >= 1, "margin_of_error needs at least one trial");
    let p = successes as f64 / trials as f64;
    1.96 * (p * (1.0 - p) / trials as f64).sqrt()
}

const GOLDEN_GAMMA: u64 = 0x9e37_79b9_7f4a_7c15;

fn splitmix64(state: &mut u64) -> u64 {
    *state = state.wrapping_add(GOLDEN_GAMMA);
    let mut z = *state;
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    z ^ (z >> 31)
}

/// Counter-based substream: a splitmix64 chain absorbing (n, e, trial) into
/// the experiment seed, keying an independent ChaCha8 stream per trial.
pub fn trial_rng(seed: u64, n: usize, e: usize, trial: u64) -> ChaCha8Rng {
    let mut state = seed;
    let mut key = splitmix64(&mut state);
    for word in [n as u64, e as u64, trial] {
        state ^= word.wrapping_mul(GOLDEN_GAMMA);
        key = splitmix64(&mut state);
    }
    ChaCha8Rng::seed_from_u64(key)
}

/// Runs the sweep. Per cell, failures to build a sampler (n or e out of
/// range) abort the whole experiment; sampling itself cannot fail.
pub fn run_experiment(config: &ExperimentConfig) -> Result<Vec<Estimate>> {
    if config.trials == 0 {
        return Err(Error::range("trial count", "trials must be ≥ 1"));
    }
    if config.workers == 0 {
        return Err(Error::range("worker count", "workers must be ≥ 1"));
    }
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(config.workers)
        .build()
        .map_err(|err| Error::range("worker pool", err.to_string()))?;
    let mut estimates = Vec::with_capacity(config.edges.len());
    for &e in &config.edges {
        let sampler = WormaldSampler::new(config.n, e)?;
        let started = std::time::Instant::now();
        let (n, seed, trials) = (config.n, config.seed, config.trials);
        let successes: u64 = pool.install(|| {
            (0..trials)
                .into_par_iter()
                .map(|trial| {
                    let mut rng = trial_rng(seed, n, e, trial);
                    let graph = sampler.sample(&mut rng).graph;
                    u64::from(is_universally_solvable(&graph))
                })
                .sum()
        });
        let estimate = Estimate {
            n,
            e,
            trials,
            successes,
            p_hat: successes as f64 / trials as f64,
            moe95: margin_of_error(successes, trials),
        };
        if !config.quiet {
            eprintln!(
                "n={} e={}: p_hat={:.6} ±{:.6} ({} trials, {:.1}s)",
                estimate.n,
                estimate.e,
                estimate.p_hat,
                estimate.moe95,
                estimate.trials,
                started.elapsed().as_secs_f64(),
            );
        }
        estimates.push(estimate);
    }
    Ok(estimates)
}

/// Renders estimates in the requested layout. CSV emits a header even for an
/// empty list; all numeric formatting is locale-independent and fixed-width
/// in precision, so identical estimates render byte-identically.
pub fn emit_table(estimates: &[Estimate], format: TableFormat) -> String {
    match format {
        TableFormat::Csv => {
            let mut out = String::from("n,e,trials,successes,p_hat,moe95\n");
            for est in estimates {
                out.push_str(&format!(
                    "{},{},{},{},{:.6},{:.6}\n",
                    est.n, est.e, est.trials, est.successes, est.p_hat, est.moe95
                ));
            }
            out
        }
        TableFormat::Text => {
            // Three (edges, probability) column pairs, filled down the rows,
            // mirroring the published table layout.
            let mut out = String::new();
            let shown = estimates.len();
            let rows = shown.div_ceil(3);
            out.push_str(&format!(
                "{:<6} {:<12}   {:<6} {:<12}   {:<6} {:<12}\n",
                "edges", "p_hat", "edges", "p_hat", "edges", "p_hat"
            ));
            for row in 0..rows {
                let mut line = String::new();
                for col in 0..3 {
                    let idx = row + col * rows;
                    if let Some(est) = estimates.get(idx) {
                        line.push_str(&format!("{:<6} {:<12.6}", est.e, est.p_hat));
                    } else {
                        line.push_str(&format!("{:<6} {:<12}", "", ""));
                    }
                    if col < 2 {
                        line.push_str("   ");
                    }
                }
                out.push_str(line.trim_end());
                out.push('\n');
            }
            out
        }
        TableFormat::Plot => {
            let mut out = String::new();
            for est in estimates {
                out.push_str(&format!("{} {:.6}\n", est.e, est.p_hat));
            }
            out
        }
    }
}
