//! Monte Carlo estimates of Bayes risk.
//!
//! Independent of the closed forms: worlds are drawn from nature's full
//! generative process (including `mu`) and each rule's 0-1 loss is averaged.
//!
//! Work is split into `workers` contiguous chunks. Chunk `k` runs on
//! `SeededRng::with_stream(seed, k)`, so the result is a pure function of
//! `(seed, n, workers)`. Changing `workers` changes the draws.

use std::thread;

use crate::error::{Error, Result};
use crate::estimators::{decide, EstimatorKind};
use crate::gauss::{Probability, SeededRng};
use crate::model::{draw_world, AnalystConfig, NatureConfig};
use crate::risk::{risk_marginal, SweepRow};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MonteCarloResult {
    pub estimate: Probability,
    pub std_error: f64,
    pub n: u64,
    pub seed: u64,
    pub estimator: EstimatorKind,
}

impl MonteCarloResult {
    fn from_counts(errors: u64, n: u64, seed: u64, estimator: EstimatorKind) -> Self {
        let p = errors as f64 / n as f64;
        Self {
            estimate: Probability::saturating(p),
            std_error: binomial_std_error(p, n),
            n,
            seed,
            estimator,
        }
    }

    /// Standardized distance from a reference risk. Infinite when the
    /// estimate is degenerate and disagrees with the reference.
    pub fn z_score(&self, reference: f64) -> f64 {
        let diff = self.estimate.value() - reference;
        if self.std_error > 0.0 {
            diff / self.std_error
        } else if diff == 0.0 {
            0.0
        } else {
            diff.signum() * f64::INFINITY
        }
    }
}

/// `sqrt(p (1 - p) / n)`
pub fn binomial_std_error(p: f64, n: u64) -> f64 {
    (p * (1.0 - p) / n as f64).sqrt()
}

fn chunk_sizes(n: u64, workers: usize) -> Vec<u64> {
    let w = workers as u64;
    (0..w).map(|k| n / w + u64::from(k < n % w)).collect()
}

fn count_errors(
    kind: EstimatorKind,
    analyst: &AnalystConfig,
    nature: &NatureConfig,
    draws: u64,
    mut rng: SeededRng,
) -> u64 {
    let mut errors = 0u64;
    for _ in 0..draws {
        let (theta, obs) = draw_world(&mut rng, nature);
        errors += u64::from(decide(kind, &obs, analyst) != theta);
    }
    errors
}

/// Simulated risk of `kind` from `n` independent worlds. `analyst` is unused
/// for [`EstimatorKind::MarginalY`].
pub fn simulate_risk(
    kind: EstimatorKind,
    analyst: &AnalystConfig,
    nature: &NatureConfig,
    n: u64,
    seed: u64,
    workers: usize,
) -> Result<MonteCarloResult> {
    if n == 0 {
        return Err(Error::ZeroCount { name: "n" });
    }
    if workers == 0 {
        return Err(Error::ZeroCount { name: "workers" });
    }
    let sizes = chunk_sizes(n, workers);
    let errors: u64 = if workers == 1 {
        count_errors(kind, analyst, nature, n, SeededRng::with_stream(seed, 0))
    } else {
        thread::scope(|scope| {
            let handles: Vec<_> = sizes
                .iter()
                .enumerate()
                .map(|(k, &draws)| {
                    let rng = SeededRng::with_stream(seed, k as u64);
                    scope.spawn(move || count_errors(kind, analyst, nature, draws, rng))
                })
                .collect();
            handles
                .into_iter()
                .map(|h| h.join().expect("simulation worker panicked"))
                .sum()
        })
    };
    Ok(MonteCarloResult::from_counts(errors, n, seed, kind))
}

/// Simulated counterpart of [`crate::risk::sweep`]: the joint risk column is
/// a Monte Carlo estimate, the marginal column is the closed form. Every grid
/// point reuses `seed`, so neighbouring points share random numbers.
pub fn simulate_sweep(
    nature: &NatureConfig,
    s_grid: &[f64],
    n: u64,
    seed: u64,
    workers: usize,
) -> Result<Vec<SweepRow>> {
    if s_grid.is_empty() {
        return Err(Error::Grid("grid is empty".into()));
    }
    let marginal = risk_marginal();
    s_grid
        .iter()
        .map(|&s| {
            let analyst = AnalystConfig::permissive(s)?;
            let mc = simulate_risk(EstimatorKind::JointXY, &analyst, nature, n, seed, workers)?;
            Ok(SweepRow {
                s,
                risk_joint: mc.estimate,
                risk_marginal: marginal,
                ratio: mc.estimate.value() / marginal.value(),
            })
        })
        .collect()
}
