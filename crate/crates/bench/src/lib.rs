//! Fixtures shared by the criterion benches.

use cddohs_core::rng::{run_rng, uniform};
use cddohs_core::RunConfig;

/// Protocol population with a short horizon, so one iteration of a bench is
/// a full (small) run.
pub fn short_run(max_iters: usize) -> RunConfig {
    RunConfig {
        max_iters,
        n_runs: 1,
        ..RunConfig::default()
    }
}

/// Two samples of `n` values each, the second shifted upwards by `shift`.
pub fn sample_pair(n: usize, shift: f64, seed: u64) -> (Vec<f64>, Vec<f64>) {
    let mut rng = run_rng(seed);
    let a = (0..n).map(|_| uniform(&mut rng, 0.0, 1.0)).collect();
    let b = (0..n).map(|_| uniform(&mut rng, 0.0, 1.0) + shift).collect();
    (a, b)
}
