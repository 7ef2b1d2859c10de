use crate::error::{Error, Result};
use crate::problem::Problem;

/// Budget and seeding shared by every algorithm.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct RunConfig {
    pub pop_size: usize,
    pub max_iters: usize,
    pub n_runs: usize,
    pub base_seed: u64,
}

impl Default for RunConfig {
    fn default() -> Self {
        Self {
            pop_size: 40,
            max_iters: 500,
            n_runs: 30,
            base_seed: 0,
        }
    }
}

impl RunConfig {
    pub fn validate(&self) -> Result<()> {
        if self.pop_size == 0 {
            return Err(Error::InvalidConfig("pop_size must be positive".into()));
        }
        if self.max_iters == 0 {
            return Err(Error::InvalidConfig("max_iters must be positive".into()));
        }
        if self.n_runs == 0 {
            return Err(Error::InvalidConfig("n_runs must be positive".into()));
        }
        Ok(())
    }

    /// Seed of run `r` (0-indexed).
    pub fn seed_for_run(&self, r: usize) -> u64 {
        self.base_seed.wrapping_add(r as u64)
    }
}

/// Outcome of one seeded run.
#[derive(Debug, Clone, PartialEq)]
pub struct RunResult {
    pub best_fitness: f64,
    pub best_position: Vec<f64>,
    /// Best fitness at the end of each iteration; length `max_iters`.
    pub trace: Vec<f64>,
    pub seed: u64,
    pub evals: usize,
}

/// A seeded optimizer over a [`Problem`].
pub trait Optimizer: Send + Sync {
    fn name(&self) -> &'static str;

    fn run(&self, problem: &Problem, config: &RunConfig, seed: u64) -> Result<RunResult>;

    /// `config.n_runs` runs with seeds `base_seed + r`.
    fn run_many(&self, problem: &Problem, config: &RunConfig) -> Result<Vec<RunResult>> {
        config.validate()?;
        (0..config.n_runs)
            .map(|r| self.run(problem, config, config.seed_for_run(r)))
            .collect()
    }
}
