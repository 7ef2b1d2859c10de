//! Child drawing development optimization.
//!
//! Each agent (a "drawing") is a point in the problem box. Per iteration and
//! per agent:
//!
//! 1. draw a random hand pressure `RHP ~ U[lower, upper]` and read the agent's
//!    hand pressure `HP`, one of its own components picked uniformly;
//! 2. compute the agent's golden ratio `(x[M] + x[N]) / x[M]` over two distinct
//!    random components;
//! 3. if `HP < RHP`, apply the skill update
//!    `x' = GR + SR (lbest - x) + LR (gbest - x)` with `SR, LR ~ U[0.6, 1]`;
//! 4. otherwise, if the golden ratio lies within `gr_tolerance` of 1.618,
//!    apply the creativity update `x' = PM[k] + SR gbest` with `SR ~ U[0, 0.5]`
//!    and `k` uniform over the pattern memory;
//! 5. otherwise leave the agent where it is.
//!
//! Updated agents are clamped to the box and evaluated immediately, so later
//! agents in the same sweep already see an improved `gbest`. At the end of the
//! sweep the global best replaces the worst pattern-memory entry when it is
//! strictly better.
//!
//! Evaluations per run: `pop_size` for the initial population plus one per
//! non-idle agent update.

use rand::RngCore;

use crate::error::{Error, Result};
use crate::problem::{init_population, Candidate, Problem};
use crate::rng::{self, RunRng};
use crate::run::{Optimizer, RunConfig, RunResult};

pub const GOLDEN_RATIO: f64 = 1.618;

/// Closed-open interval a rate is drawn from.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RateInterval {
    pub lo: f64,
    pub hi: f64,
}

impl RateInterval {
    pub const fn new(lo: f64, hi: f64) -> Self {
        Self { lo, hi }
    }

    pub fn sample<R: RngCore + ?Sized>(&self, rng: &mut R) -> f64 {
        rng::uniform(rng, self.lo, self.hi)
    }

    pub fn contains(&self, v: f64) -> bool {
        (self.lo..=self.hi).contains(&v)
    }
}

/// How many entries the pattern memory holds.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum PatternSize {
    /// `ceil(fraction * pop_size)`.
    Fraction(f64),
    Fixed(usize),
}

impl PatternSize {
    pub fn resolve(self, pop_size: usize) -> usize {
        match self {
            // the epsilon keeps e.g. 0.8 * 40 from rounding up to 33
            PatternSize::Fraction(f) => (f * pop_size as f64 - 1e-9).ceil().max(0.0) as usize,
            PatternSize::Fixed(n) => n,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CddoParams {
    /// Creativity factor. Kept for completeness; the creativity update does
    /// not use it.
    pub cr: f64,
    /// SR and LR on the skill branch.
    pub high: RateInterval,
    /// SR on the creativity branch.
    pub low: RateInterval,
    pub pattern_size: PatternSize,
    /// Maximum distance from 1.618 that counts as "near the golden ratio".
    pub gr_tolerance: f64,
}

impl Default for CddoParams {
    fn default() -> Self {
        Self {
            cr: 0.1,
            high: RateInterval::new(0.6, 1.0),
            low: RateInterval::new(0.0, 0.5),
            pattern_size: PatternSize::Fraction(0.2),
            gr_tolerance: 0.1,
        }
    }
}

impl CddoParams {
    /// Checks the parameters against a population size and returns the
    /// resolved pattern-memory capacity.
    pub fn validate(&self, pop_size: usize) -> Result<usize> {
        let pm_size = self.pattern_size.resolve(pop_size);
        if pm_size == 0 || pm_size > pop_size {
            return Err(Error::InvalidConfig(format!(
                "pattern memory size {pm_size} must be in 1..={pop_size}"
            )));
        }
        for (name, iv) in [("high", self.high), ("low", self.low)] {
            if !(0.0 <= iv.lo && iv.lo <= iv.hi && iv.hi <= 1.0) {
                return Err(Error::InvalidConfig(format!(
                    "{name} rate interval [{}, {}] must lie within [0, 1]",
                    iv.lo, iv.hi
                )));
            }
        }
        if self.low.hi > self.high.lo {
            return Err(Error::InvalidConfig(format!(
                "low rates (max {}) overlap high rates (min {})",
                self.low.hi, self.high.lo
            )));
        }
        if self.gr_tolerance.is_nan() || self.gr_tolerance < 0.0 {
            return Err(Error::InvalidConfig("gr_tolerance must be non-negative".into()));
        }
        Ok(pm_size)
    }
}

/// Fixed-capacity archive of elite candidates.
#[derive(Debug, Clone, PartialEq)]
pub struct PatternMemory {
    entries: Vec<Candidate>,
}

impl PatternMemory {
    /// The `capacity` best candidates of `population`, ascending by fitness.
    pub fn from_best(population: &[Candidate], capacity: usize) -> Self {
        assert!(
            capacity >= 1 && capacity <= population.len(),
            "pattern memory capacity {capacity} out of range"
        );
        let mut order: Vec<usize> = (0..population.len()).collect();
        order.sort_by(|&a, &b| population[a].fitness.total_cmp(&population[b].fitness));
        Self {
            entries: order[..capacity].iter().map(|&i| population[i].clone()).collect(),
        }
    }

    pub fn entries(&self) -> &[Candidate] {
        &self.entries
    }

    pub fn capacity(&self) -> usize {
        self.entries.len()
    }

    /// First entry of maximal fitness.
    pub fn worst_index(&self) -> usize {
        worst_of(&self.entries)
    }

    pub fn worst_fitness(&self) -> f64 {
        self.entries[self.worst_index()].fitness
    }

    pub fn best_fitness(&self) -> f64 {
        self.entries.iter().map(|c| c.fitness).fold(f64::INFINITY, f64::min)
    }

    /// Overwrites the worst entry if `candidate` is strictly better.
    pub fn replace_worst(&mut self, candidate: Candidate) -> bool {
        let w = self.worst_index();
        if candidate.fitness < self.entries[w].fitness {
            self.entries[w] = candidate;
            true
        } else {
            false
        }
    }
}

pub(crate) fn worst_of(rows: &[Candidate]) -> usize {
    let mut w = 0;
    for (i, c) in rows.iter().enumerate().skip(1) {
        if c.fitness > rows[w].fitness {
            w = i;
        }
    }
    w
}

/// What one agent did during a sweep.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Branch {
    Skill { sr: f64, lr: f64 },
    Creativity { sr: f64, pm_index: usize },
    Idle,
}

#[derive(Debug, Clone)]
pub struct CddoState {
    pub population: Vec<Candidate>,
    /// Best position each agent has visited.
    pub lbest: Vec<Candidate>,
    pub gbest: Candidate,
    pub pm: PatternMemory,
    pub iteration: usize,
    pub evals: usize,
}

impl CddoState {
    pub fn init<R: RngCore>(problem: &Problem, pop_size: usize, pm_size: usize, rng: &mut R) -> Result<Self> {
        if problem.dim() < 2 {
            return Err(Error::GoldenRatioDimension(problem.id().to_string()));
        }
        if pm_size == 0 || pm_size > pop_size {
            return Err(Error::InvalidConfig(format!(
                "pattern memory size {pm_size} must be in 1..={pop_size}"
            )));
        }
        let population = init_population(problem, pop_size, rng);
        let gbest = population[best_of(&population)].clone();
        let pm = PatternMemory::from_best(&population, pm_size);
        Ok(Self {
            lbest: population.clone(),
            population,
            gbest,
            pm,
            iteration: 0,
            evals: pop_size,
        })
    }

    /// One sweep over the population; returns the branch each agent took.
    pub fn step<R: RngCore>(&mut self, problem: &Problem, params: &CddoParams, rng: &mut R) -> Vec<Branch> {
        let mut branches = Vec::with_capacity(self.population.len());
        for i in 0..self.population.len() {
            let x = &self.population[i].position;
            let rhp = random_hand_pressure(problem, rng);
            let hp = select_hand_pressure(x, rng);
            let gr = golden_ratio_unchecked(x, rng);

            let (branch, next) = if hp < rhp {
                let sr = params.high.sample(rng);
                let lr = params.high.sample(rng);
                let next = skill_update(x, &self.lbest[i].position, &self.gbest.position, gr, sr, lr, problem);
                (Branch::Skill { sr, lr }, Some(next))
            } else if (gr - GOLDEN_RATIO).abs() <= params.gr_tolerance {
                let sr = params.low.sample(rng);
                let pm_index = rng::index(rng, self.pm.capacity());
                let next = creativity_update(&self.pm.entries()[pm_index].position, &self.gbest.position, sr, problem);
                (Branch::Creativity { sr, pm_index }, Some(next))
            } else {
                (Branch::Idle, None)
            };

            if let Some(position) = next {
                let moved = Candidate::evaluated(problem, position, rng);
                self.evals += 1;
                if moved.fitness < self.lbest[i].fitness {
                    self.lbest[i] = moved.clone();
                }
                if moved.fitness < self.gbest.fitness {
                    self.gbest = moved.clone();
                }
                self.population[i] = moved;
            }
            branches.push(branch);
        }
        self.pm.replace_worst(self.gbest.clone());
        self.iteration += 1;
        branches
    }
}

fn best_of(rows: &[Candidate]) -> usize {
    let mut b = 0;
    for (i, c) in rows.iter().enumerate().skip(1) {
        if c.fitness < rows[b].fitness {
            b = i;
        }
    }
    b
}

/// `RHP ~ U[lower, upper]`.
pub fn random_hand_pressure<R: RngCore + ?Sized>(problem: &Problem, rng: &mut R) -> f64 {
    rng::uniform(rng, problem.lower(), problem.upper())
}

/// One uniformly chosen component of `position`.
pub fn select_hand_pressure<R: RngCore + ?Sized>(position: &[f64], rng: &mut R) -> f64 {
    position[rng::index(rng, position.len())]
}

/// `(x[M] + x[N]) / x[M]` over two distinct random indices.
///
/// A zero denominator triggers one redraw of the pair; if that is zero too
/// the result is exactly [`GOLDEN_RATIO`].
pub fn golden_ratio<R: RngCore + ?Sized>(position: &[f64], rng: &mut R) -> Result<f64> {
    if position.len() < 2 {
        return Err(Error::GoldenRatioDimension(format!(
            "<{}-dimensional position>",
            position.len()
        )));
    }
    Ok(golden_ratio_unchecked(position, rng))
}

fn golden_ratio_unchecked<R: RngCore + ?Sized>(position: &[f64], rng: &mut R) -> f64 {
    for _ in 0..2 {
        let (m, n) = rng::distinct_pair(rng, position.len());
        if position[m] != 0.0 {
            return golden_ratio_of(position[m], position[n]);
        }
    }
    GOLDEN_RATIO
}

/// `(length + width) / length`.
pub fn golden_ratio_of(length: f64, width: f64) -> f64 {
    (length + width) / length
}

/// `gr + sr (lbest - x) + lr (gbest - x)`, the scalar `gr` added to every
/// component, then clamped.
pub fn skill_update(x: &[f64], lbest: &[f64], gbest: &[f64], gr: f64, sr: f64, lr: f64, problem: &Problem) -> Vec<f64> {
    let next = x
        .iter()
        .zip(lbest)
        .zip(gbest)
        .map(|((&xi, &li), &gi)| gr + sr * (li - xi) + lr * (gi - xi))
        .collect();
    problem.clamped(next)
}

/// `pm_entry + sr * gbest`, then clamped.
pub fn creativity_update(pm_entry: &[f64], gbest: &[f64], sr: f64, problem: &Problem) -> Vec<f64> {
    let next = pm_entry.iter().zip(gbest).map(|(&p, &g)| p + sr * g).collect();
    problem.clamped(next)
}

pub fn cddo_step<R: RngCore>(
    state: &mut CddoState,
    problem: &Problem,
    params: &CddoParams,
    rng: &mut R,
) -> Vec<Branch> {
    state.step(problem, params, rng)
}

/// Shared driver for CDDO and the hybrid. `before_sweep` runs at the start of
/// each iteration and returns the number of evaluations it spent.
pub(crate) fn drive<H>(
    problem: &Problem,
    config: &RunConfig,
    params: &CddoParams,
    seed: u64,
    mut before_sweep: H,
) -> Result<RunResult>
where
    H: FnMut(&mut CddoState, &Problem, &mut RunRng) -> usize,
{
    config.validate()?;
    let pm_size = params.validate(config.pop_size)?;
    let mut rng = rng::run_rng(seed);
    let mut state = CddoState::init(problem, config.pop_size, pm_size, &mut rng)?;
    let mut trace = Vec::with_capacity(config.max_iters);
    for _ in 0..config.max_iters {
        state.evals += before_sweep(&mut state, problem, &mut rng);
        state.step(problem, params, &mut rng);
        trace.push(state.gbest.fitness);
    }
    Ok(RunResult {
        best_fitness: state.gbest.fitness,
        best_position: state.gbest.position,
        trace,
        seed,
        evals: state.evals,
    })
}

/// Single CDDO run seeded with `config.base_seed`.
pub fn cddo_run(problem: &Problem, config: &RunConfig, params: &CddoParams) -> Result<RunResult> {
    Cddo::new(*params).run(problem, config, config.base_seed)
}

#[derive(Debug, Clone, Copy, Default)]
pub struct Cddo {
    pub params: CddoParams,
}

impl Cddo {
    pub fn new(params: CddoParams) -> Self {
        Self { params }
    }
}

impl Optimizer for Cddo {
    fn name(&self) -> &'static str {
        "cddo"
    }

    fn run(&self, problem: &Problem, config: &RunConfig, seed: u64) -> Result<RunResult> {
        drive(problem, config, &self.params, seed, |_, _, _| 0)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::benchmarks::FunctionId;
    use crate::rng::run_rng;

    fn boxed(dim: usize, lo: f64, hi: f64) -> Problem {
        Problem::from_fn("sphere", dim, lo, hi, |x| x.iter().map(|v| v * v).sum()).unwrap()
    }

    #[test]
    fn hand_pressure_draws() {
        let p = boxed(2, -100.0, 100.0);
        let mut rng = run_rng(1);
        for _ in 0..1000 {
            let v = random_hand_pressure(&p, &mut rng);
            assert!((-100.0..=100.0).contains(&v));
        }
        let a = random_hand_pressure(&p, &mut run_rng(8));
        let b = random_hand_pressure(&p, &mut run_rng(8));
        assert_eq!(a, b);
        // degenerate box via the raw primitive
        assert_eq!(rng::uniform(&mut rng, 5.0, 5.0), 5.0);
    }

    #[test]
    fn hand_pressure_selection() {
        let mut rng = run_rng(2);
        assert_eq!(select_hand_pressure(&[7.0], &mut rng), 7.0);
        let mut counts = [0usize; 3];
        for _ in 0..3000 {
            let v = select_hand_pressure(&[1.0, 2.0, 3.0], &mut rng);
            counts[v as usize - 1] += 1;
        }
        for c in counts {
            assert!((c as f64 / 3000.0 - 1.0 / 3.0).abs() < 0.05, "{counts:?}");
        }
        let a = select_hand_pressure(&[1.0, 2.0, 3.0, 4.0], &mut run_rng(4));
        let b = select_hand_pressure(&[1.0, 2.0, 3.0, 4.0], &mut run_rng(4));
        assert_eq!(a, b);
    }

    #[test]
    fn golden_ratio_by_hand() {
        assert!((golden_ratio_of(1.0, 0.618) - 1.618).abs() < 1e-12);
        assert_eq!(golden_ratio_of(2.0, 2.0), 2.0);
        assert_eq!(golden_ratio_of(-1.0, 1.0), 0.0);
    }

    #[test]
    fn golden_ratio_needs_two_components() {
        assert!(golden_ratio(&[1.0], &mut run_rng(0)).is_err());
        let p = boxed(1, -1.0, 1.0);
        let err = CddoState::init(&p, 4, 1, &mut run_rng(0)).unwrap_err();
        assert!(matches!(err, Error::GoldenRatioDimension(_)));
    }

    #[test]
    fn golden_ratio_of_equal_components() {
        let mut rng = run_rng(3);
        for _ in 0..100 {
            assert_eq!(golden_ratio(&[2.0, 2.0, 2.0], &mut rng).unwrap(), 2.0);
        }
    }

    #[test]
    fn golden_ratio_zero_denominator_falls_back() {
        let mut rng = run_rng(3);
        assert_eq!(golden_ratio(&[0.0, 0.0], &mut rng).unwrap(), GOLDEN_RATIO);
        // one non-zero component: either its own pair ratio or the fallback
        for _ in 0..100 {
            let g = golden_ratio(&[0.0, 3.0], &mut rng).unwrap();
            assert!(g == 1.0 || g == GOLDEN_RATIO, "{g}");
        }
    }

    #[test]
    fn skill_update_examples() {
        let p = boxed(1, -10.0, 10.0);
        let v = skill_update(&[0.0], &[1.0], &[2.0], 1.6, 1.0, 1.0, &p);
        assert!((v[0] - 4.6).abs() < 1e-12);

        let p3 = boxed(3, -5.0, 5.0);
        let x = [0.3, -2.0, 4.0];
        assert_eq!(skill_update(&x, &x, &x, 0.0, 0.8, 0.9, &p3), vec![0.0; 3]);
        assert_eq!(
            skill_update(&x, &[1.0; 3], &[-1.0; 3], 1.618, 0.0, 0.0, &p3),
            vec![1.618; 3]
        );
        // broadcast GR past the box saturates
        assert_eq!(skill_update(&x, &x, &x, 9.0, 0.7, 0.7, &p3), vec![5.0; 3]);
    }

    #[test]
    fn creativity_update_examples() {
        let p = boxed(2, -10.0, 10.0);
        assert_eq!(creativity_update(&[1.0, 1.0], &[2.0, 4.0], 0.0, &p), vec![1.0, 1.0]);
        assert_eq!(creativity_update(&[1.0, 1.0], &[2.0, 4.0], 0.5, &p), vec![2.0, 3.0]);
        let p1 = boxed(1, -10.0, 10.0);
        assert_eq!(creativity_update(&[9.0], &[9.0], 0.5, &p1), vec![10.0]);
    }

    #[test]
    fn pattern_size_rounding() {
        assert_eq!(PatternSize::Fraction(0.8).resolve(40), 32);
        assert_eq!(PatternSize::Fraction(0.2).resolve(40), 8);
        assert_eq!(PatternSize::Fraction(0.2).resolve(41), 9);
        assert_eq!(PatternSize::Fraction(0.8).resolve(3), 3);
        assert_eq!(PatternSize::Fixed(5).resolve(40), 5);
    }

    #[test]
    fn params_validation() {
        assert_eq!(CddoParams::default().validate(40).unwrap(), 8);
        let bad = [
            CddoParams {
                pattern_size: PatternSize::Fixed(0),
                ..Default::default()
            },
            CddoParams {
                pattern_size: PatternSize::Fixed(41),
                ..Default::default()
            },
            CddoParams {
                high: RateInterval::new(0.6, 1.2),
                ..Default::default()
            },
            CddoParams {
                low: RateInterval::new(0.0, 0.7),
                ..Default::default()
            },
            CddoParams {
                gr_tolerance: -1.0,
                ..Default::default()
            },
        ];
        for p in bad {
            assert!(p.validate(40).is_err(), "{p:?}");
        }
    }

    #[test]
    fn pattern_memory_keeps_best_sorted_and_replaces_strictly() {
        let pop: Vec<Candidate> = [5.0, 1.0, 4.0, 2.0, 3.0]
            .iter()
            .map(|&f| Candidate {
                position: vec![f, f],
                fitness: f,
            })
            .collect();
        let mut pm = PatternMemory::from_best(&pop, 3);
        let fits: Vec<f64> = pm.entries().iter().map(|c| c.fitness).collect();
        assert_eq!(fits, vec![1.0, 2.0, 3.0]);
        assert_eq!(pm.worst_fitness(), 3.0);
        assert!(!pm.replace_worst(Candidate {
            position: vec![0.0; 2],
            fitness: 3.0
        }));
        assert!(pm.replace_worst(Candidate {
            position: vec![0.0; 2],
            fitness: 0.5
        }));
        assert_eq!(pm.worst_fitness(), 2.0);
        assert_eq!(pm.best_fitness(), 0.5);
        assert_eq!(pm.capacity(), 3);
    }

    #[test]
    fn one_step_does_not_worsen_gbest() {
        let p = FunctionId::F1.problem();
        let mut rng = run_rng(17);
        let mut s = CddoState::init(&p, 40, 8, &mut rng).unwrap();
        let before = s.gbest.fitness;
        s.step(&p, &CddoParams::default(), &mut rng);
        assert!(s.gbest.fitness <= before);
        assert_eq!(s.iteration, 1);
    }

    #[test]
    fn collapsed_population_jumps_to_broadcast_ratio() {
        // every agent equals gbest: the skill branch lands on clamp(GR * 1)
        let p = boxed(3, -5.0, 5.0);
        let mut rng = run_rng(5);
        let mut s = CddoState::init(&p, 6, 2, &mut rng).unwrap();
        let g = Candidate {
            position: vec![1.0, 1.0, 1.0],
            fitness: 3.0,
        };
        for c in s.population.iter_mut().chain(s.lbest.iter_mut()) {
            *c = g.clone();
        }
        s.gbest = g;
        let before = s.population.clone();
        let branches = s.step(&p, &CddoParams::default(), &mut rng);
        for (i, b) in branches.iter().enumerate() {
            if let Branch::Skill { .. } = b {
                // GR of an all-ones vector is 2
                assert_eq!(s.population[i].position, vec![2.0; 3]);
            }
            if let Branch::Idle = b {
                assert_eq!(s.population[i], before[i]);
            }
        }
    }

    #[test]
    fn run_is_deterministic_and_counts_evals() {
        let p = FunctionId::F16.problem();
        let config = RunConfig {
            max_iters: 60,
            ..Default::default()
        };
        let a = Cddo::default().run(&p, &config, 3).unwrap();
        let b = Cddo::default().run(&p, &config, 3).unwrap();
        assert_eq!(a, b);
        assert_eq!(a.trace.len(), 60);
        assert_eq!(a.best_fitness, *a.trace.last().unwrap());
        assert!(a.evals >= 40 && a.evals <= 40 * 61);
    }

    #[test]
    fn griewank_run_is_nonnegative() {
        let config = RunConfig {
            max_iters: 100,
            ..Default::default()
        };
        let r = cddo_run(&FunctionId::F11.problem(), &config, &CddoParams::default()).unwrap();
        assert!(r.best_fitness >= 0.0);
    }
}
