//! Harmony search.
//!
//! One new harmony per iteration: each component is copied from a random
//! memory row with probability `hmcr` (and then nudged by `U(-1, 1) * bw` with
//! probability `par`), otherwise drawn uniformly from the box. The new harmony
//! replaces the worst row when strictly better.
//!
//! Evaluations per run: `hms + max_iters`.

use rand::RngCore;

use crate::cddo::worst_of;
use crate::error::{Error, Result};
use crate::problem::{init_population, Candidate, Problem};
use crate::rng;
use crate::run::{Optimizer, RunConfig, RunResult};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Bandwidth {
    /// Perturbation `U(-1, 1) * bw`.
    #[default]
    Absolute,
    /// Perturbation `U(-1, 1) * bw * (upper - lower)`.
    RangeScaled,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct HsParams {
    pub hmcr: f64,
    pub par: f64,
    pub bw: f64,
    pub bandwidth: Bandwidth,
    /// Harmony memory size; `None` uses the run's `pop_size`.
    pub hms: Option<usize>,
}

impl Default for HsParams {
    fn default() -> Self {
        Self {
            hmcr: 0.995,
            par: 0.1,
            bw: 0.04,
            bandwidth: Bandwidth::Absolute,
            hms: None,
        }
    }
}

impl HsParams {
    pub fn validate(&self) -> Result<()> {
        for (name, v) in [("hmcr", self.hmcr), ("par", self.par)] {
            if !(0.0..=1.0).contains(&v) {
                return Err(Error::InvalidConfig(format!("{name} = {v} is not a probability")));
            }
        }
        if self.bw.is_nan() || self.bw < 0.0 {
            return Err(Error::InvalidConfig("bw must be non-negative".into()));
        }
        if self.hms == Some(0) {
            return Err(Error::InvalidConfig("hms must be positive".into()));
        }
        Ok(())
    }

    fn step_width(&self, problem: &Problem) -> f64 {
        match self.bandwidth {
            Bandwidth::Absolute => self.bw,
            Bandwidth::RangeScaled => self.bw * (problem.upper() - problem.lower()),
        }
    }
}

/// Where one improvised component came from.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Origin {
    Memory { adjusted: bool },
    Random,
}

/// Improvises one vector from `rows` (a harmony memory or any other
/// archive). The result is clamped to the box.
pub fn improvise<R: RngCore>(rows: &[Candidate], params: &HsParams, problem: &Problem, rng: &mut R) -> Vec<f64> {
    improvise_traced(rows, params, problem, rng).0
}

/// [`improvise`] plus the origin of every component.
///
/// Per component the stream is read in this order: the memory coin, then
/// either (row index, pitch coin, optional perturbation) or one uniform
/// draw from the box.
pub fn improvise_traced<R: RngCore>(
    rows: &[Candidate],
    params: &HsParams,
    problem: &Problem,
    rng: &mut R,
) -> (Vec<f64>, Vec<Origin>) {
    let width = params.step_width(problem);
    let mut origins = Vec::with_capacity(problem.dim());
    let mut next: Vec<f64> = (0..problem.dim())
        .map(|k| {
            if rng::chance(rng, params.hmcr) {
                let mut v = rows[rng::index(rng, rows.len())].position[k];
                let adjusted = rng::chance(rng, params.par);
                if adjusted {
                    v += rng::uniform(rng, -1.0, 1.0) * width;
                }
                origins.push(Origin::Memory { adjusted });
                v
            } else {
                origins.push(Origin::Random);
                rng::uniform(rng, problem.lower(), problem.upper())
            }
        })
        .collect();
    problem.clamp(&mut next);
    (next, origins)
}

/// The harmony memory with a cached worst row.
#[derive(Debug, Clone, PartialEq)]
pub struct HarmonyMemory {
    rows: Vec<Candidate>,
    worst_index: usize,
}

impl HarmonyMemory {
    pub fn new(rows: Vec<Candidate>) -> Self {
        assert!(!rows.is_empty(), "harmony memory needs at least one row");
        let worst_index = worst_of(&rows);
        Self { rows, worst_index }
    }

    pub fn random<R: RngCore>(problem: &Problem, hms: usize, rng: &mut R) -> Self {
        Self::new(init_population(problem, hms, rng))
    }

    pub fn rows(&self) -> &[Candidate] {
        &self.rows
    }

    pub fn worst_index(&self) -> usize {
        self.worst_index
    }

    pub fn worst_fitness(&self) -> f64 {
        self.rows[self.worst_index].fitness
    }

    pub fn best(&self) -> &Candidate {
        let mut b = 0;
        for (i, c) in self.rows.iter().enumerate().skip(1) {
            if c.fitness < self.rows[b].fitness {
                b = i;
            }
        }
        &self.rows[b]
    }

    /// Overwrites the worst row if `candidate` is strictly better.
    pub fn replace_worst(&mut self, candidate: Candidate) -> bool {
        if candidate.fitness < self.worst_fitness() {
            self.rows[self.worst_index] = candidate;
            self.worst_index = worst_of(&self.rows);
            true
        } else {
            false
        }
    }
}

/// Single HS run seeded with `config.base_seed`.
pub fn hs_run(problem: &Problem, config: &RunConfig, params: &HsParams) -> Result<RunResult> {
    HarmonySearch::new(*params).run(problem, config, config.base_seed)
}

#[derive(Debug, Clone, Copy, Default)]
pub struct HarmonySearch {
    pub params: HsParams,
}

impl HarmonySearch {
    pub fn new(params: HsParams) -> Self {
        Self { params }
    }
}

impl Optimizer for HarmonySearch {
    fn name(&self) -> &'static str {
        "hs"
    }

    fn run(&self, problem: &Problem, config: &RunConfig, seed: u64) -> Result<RunResult> {
        config.validate()?;
        self.params.validate()?;
        let hms = self.params.hms.unwrap_or(config.pop_size);
        let mut rng = rng::run_rng(seed);
        let mut hm = HarmonyMemory::random(problem, hms, &mut rng);
        let mut trace = Vec::with_capacity(config.max_iters);
        for _ in 0..config.max_iters {
            let position = improvise(hm.rows(), &self.params, problem, &mut rng);
            hm.replace_worst(Candidate::evaluated(problem, position, &mut rng));
            trace.push(hm.best().fitness);
        }
        let best = hm.best().clone();
        Ok(RunResult {
            best_fitness: best.fitness,
            best_position: best.position,
            trace,
            seed,
            evals: hms + config.max_iters,
        })
    }
}
