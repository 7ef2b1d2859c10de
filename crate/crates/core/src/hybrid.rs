//! CDDO–HS: CDDO whose pattern memory holds 80% of the population and is
//! refreshed at the start of every iteration by a harmony-search
//! improvisation over the memory itself.
//!
//! The improvised vector competes only against the pattern memory (it
//! replaces the worst entry when strictly better) and never enters the
//! population directly; agents taking the creativity branch in the same
//! iteration already draw from the refreshed memory.
//!
//! Evaluations per run: `pop_size` initial, one per non-idle agent update,
//! plus `refreshes_per_iter` per iteration.

use rand::RngCore;

use crate::cddo::{self, CddoParams, PatternMemory, PatternSize};
use crate::error::{Error, Result};
use crate::hs::{improvise, HsParams};
use crate::problem::{Candidate, Problem};
use crate::run::{Optimizer, RunConfig, RunResult};

pub const PATTERN_FRACTION: f64 = 0.8;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct HybridParams {
    pub cddo: CddoParams,
    pub hs: HsParams,
    /// HS improvisations applied to the pattern memory before each sweep.
    /// Zero turns the hybrid back into CDDO with an 80% pattern memory.
    pub refreshes_per_iter: usize,
}

impl Default for HybridParams {
    fn default() -> Self {
        Self::new(CddoParams::default(), HsParams::default())
    }
}

impl HybridParams {
    /// Uses `cddo` with its pattern size forced to 80% of the population.
    pub fn new(cddo: CddoParams, hs: HsParams) -> Self {
        Self {
            cddo: CddoParams {
                pattern_size: PatternSize::Fraction(PATTERN_FRACTION),
                ..cddo
            },
            hs,
            refreshes_per_iter: 1,
        }
    }

    pub fn validate(&self, pop_size: usize) -> Result<usize> {
        if self.cddo.pattern_size != PatternSize::Fraction(PATTERN_FRACTION) {
            return Err(Error::InvalidConfig(format!(
                "hybrid pattern size must be {PATTERN_FRACTION} of the population, got {:?}",
                self.cddo.pattern_size
            )));
        }
        self.hs.validate()?;
        self.cddo.validate(pop_size)
    }
}

/// One HS improvisation over the pattern memory; the result replaces the
/// worst entry when strictly better. Costs one evaluation.
pub fn refresh_pattern_memory<R: RngCore>(
    pm: &mut PatternMemory,
    hs_params: &HsParams,
    problem: &Problem,
    rng: &mut R,
) -> bool {
    let position = improvise(pm.entries(), hs_params, problem, rng);
    pm.replace_worst(Candidate::evaluated(problem, position, rng))
}

/// Single hybrid run seeded with `config.base_seed`.
pub fn cddo_hs_run(problem: &Problem, config: &RunConfig, params: &HybridParams) -> Result<RunResult> {
    CddoHs::new(*params).run(problem, config, config.base_seed)
}

#[derive(Debug, Clone, Copy, Default)]
pub struct CddoHs {
    pub params: HybridParams,
}

impl CddoHs {
    pub fn new(params: HybridParams) -> Self {
        Self { params }
    }
}

impl Optimizer for CddoHs {
    fn name(&self) -> &'static str {
        "cddo-hs"
    }

    fn run(&self, problem: &Problem, config: &RunConfig, seed: u64) -> Result<RunResult> {
        self.params.validate(config.pop_size)?;
        let HybridParams {
            cddo,
            hs,
            refreshes_per_iter,
        } = self.params;
        cddo::drive(problem, config, &cddo, seed, |state, problem, rng| {
            for _ in 0..refreshes_per_iter {
                refresh_pattern_memory(&mut state.pm, &hs, problem, rng);
            }
            refreshes_per_iter
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::benchmarks::FunctionId;
    use crate::rng::run_rng;

    #[test]
    fn pattern_size_is_forced() {
        let p = HybridParams::new(
            CddoParams {
                pattern_size: PatternSize::Fixed(3),
                ..Default::default()
            },
            HsParams::default(),
        );
        assert_eq!(p.validate(40).unwrap(), 32);
        let mut tampered = p;
        tampered.cddo.pattern_size = PatternSize::Fraction(0.5);
        assert!(tampered.validate(40).is_err());
    }

    fn uniform_pm(v: &[f64], n: usize, problem: &Problem) -> PatternMemory {
        let c = Candidate::evaluated(problem, v.to_vec(), &mut run_rng(0));
        PatternMemory::from_best(&vec![c; n], n)
    }

    #[test]
    fn forced_memory_copy_never_replaces() {
        let problem = FunctionId::F1.problem();
        let mut pm = uniform_pm(&[3.0; 10], 32, &problem);
        let before = pm.clone();
        let params = HsParams {
            hmcr: 1.0,
            par: 0.0,
            ..Default::default()
        };
        let mut rng = run_rng(1);
        for _ in 0..20 {
            assert!(!refresh_pattern_memory(&mut pm, &params, &problem, &mut rng));
        }
        assert_eq!(pm, before);
    }

    #[test]
    fn random_refresh_eventually_improves() {
        let problem = FunctionId::F1.problem();
        // far corner: fitness 10 * 95^2
        let mut pm = uniform_pm(&[95.0; 10], 32, &problem);
        let params = HsParams {
            hmcr: 0.0,
            ..Default::default()
        };
        let mut rng = run_rng(2);
        let start = pm.worst_fitness();
        let mut improved = false;
        for _ in 0..1000 {
            let w = pm.worst_fitness();
            improved |= refresh_pattern_memory(&mut pm, &params, &problem, &mut rng);
            assert!(pm.worst_fitness() <= w);
            assert!(pm.entries().iter().all(|c| problem.contains(&c.position)));
        }
        assert!(improved && pm.worst_fitness() < start);
    }

    #[test]
    fn eval_count_includes_refreshes() {
        let problem = FunctionId::F16.problem();
        let config = RunConfig {
            max_iters: 30,
            ..Default::default()
        };
        let with = CddoHs::default().run(&problem, &config, 4).unwrap();
        let params = HybridParams {
            refreshes_per_iter: 0,
            ..HybridParams::default()
        };
        let without = CddoHs::new(params).run(&problem, &config, 4).unwrap();
        assert!(with.evals >= 40 + 30 && with.evals <= 40 * 31 + 30);
        assert!(without.evals <= 40 * 31);
    }

    #[test]
    fn single_run_is_deterministic() {
        let problem = FunctionId::F9.problem();
        let config = RunConfig {
            max_iters: 40,
            base_seed: 99,
            ..Default::default()
        };
        let a = cddo_hs_run(&problem, &config, &HybridParams::default()).unwrap();
        let b = cddo_hs_run(&problem, &config, &HybridParams::default()).unwrap();
        assert_eq!(a, b);
        assert_eq!(a.seed, 99);
    }
}
