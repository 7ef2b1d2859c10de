use std::fmt;
use std::sync::Arc;

use rand::RngCore;

use crate::error::{Error, Result};
use crate::rng;

/// A cost function over `R^dim`.
///
/// `rng` is the run's stream. Deterministic objectives ignore it; noisy ones
/// (F7) draw from it so that the whole run stays replayable.
pub trait Objective: Send + Sync {
    fn evaluate(&self, x: &[f64], rng: &mut dyn RngCore) -> f64;

    fn is_stochastic(&self) -> bool {
        false
    }
}

/// Adapts a plain deterministic closure into an [`Objective`].
pub struct FnObjective<F>(pub F);

impl<F> Objective for FnObjective<F>
where
    F: Fn(&[f64]) -> f64 + Send + Sync,
{
    fn evaluate(&self, x: &[f64], _rng: &mut dyn RngCore) -> f64 {
        (self.0)(x)
    }
}

/// An objective with its dimension, uniform box bounds and optional known minimum.
#[derive(Clone)]
pub struct Problem {
    id: String,
    dim: usize,
    lower: f64,
    upper: f64,
    known_min: Option<f64>,
    objective: Arc<dyn Objective>,
}

impl Problem {
    pub fn new(
        id: impl Into<String>,
        dim: usize,
        lower: f64,
        upper: f64,
        objective: Arc<dyn Objective>,
    ) -> Result<Self> {
        let id = id.into();
        if dim == 0 {
            return Err(Error::InvalidProblem {
                id,
                reason: "dimension must be at least 1".into(),
            });
        }
        if !lower.is_finite() || !upper.is_finite() || lower >= upper {
            return Err(Error::InvalidProblem {
                id,
                reason: format!("bounds [{lower}, {upper}] are not a finite interval with lower < upper"),
            });
        }
        Ok(Self {
            id,
            dim,
            lower,
            upper,
            known_min: None,
            objective,
        })
    }

    pub fn from_fn<F>(id: impl Into<String>, dim: usize, lower: f64, upper: f64, f: F) -> Result<Self>
    where
        F: Fn(&[f64]) -> f64 + Send + Sync + 'static,
    {
        Self::new(id, dim, lower, upper, Arc::new(FnObjective(f)))
    }

    #[must_use]
    pub fn with_known_min(mut self, f_min: f64) -> Self {
        self.known_min = Some(f_min);
        self
    }

    pub fn id(&self) -> &str {
        &self.id
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn lower(&self) -> f64 {
        self.lower
    }

    pub fn upper(&self) -> f64 {
        self.upper
    }

    pub fn known_min(&self) -> Option<f64> {
        self.known_min
    }

    pub fn is_stochastic(&self) -> bool {
        self.objective.is_stochastic()
    }

    pub fn evaluate(&self, x: &[f64], rng: &mut dyn RngCore) -> f64 {
        debug_assert_eq!(x.len(), self.dim, "{}: wrong input length", self.id);
        self.objective.evaluate(x, rng)
    }

    /// Saturates every component into `[lower, upper]`.
    pub fn clamp(&self, position: &mut [f64]) {
        for v in position.iter_mut() {
            *v = v.max(self.lower).min(self.upper);
        }
    }

    #[must_use]
    pub fn clamped(&self, mut position: Vec<f64>) -> Vec<f64> {
        self.clamp(&mut position);
        position
    }

    pub fn contains(&self, position: &[f64]) -> bool {
        position.iter().all(|v| (self.lower..=self.upper).contains(v))
    }
}

impl fmt::Debug for Problem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Problem")
            .field("id", &self.id)
            .field("dim", &self.dim)
            .field("lower", &self.lower)
            .field("upper", &self.upper)
            .field("known_min", &self.known_min)
            .field("stochastic", &self.is_stochastic())
            .finish()
    }
}

/// A position and its cost.
#[derive(Debug, Clone, PartialEq)]
pub struct Candidate {
    pub position: Vec<f64>,
    pub fitness: f64,
}

impl Candidate {
    pub fn evaluated<R: RngCore>(problem: &Problem, position: Vec<f64>, rng: &mut R) -> Self {
        let fitness = problem.evaluate(&position, rng);
        Self { position, fitness }
    }
}

/// `n` candidates with every component uniform in the problem box.
///
/// Candidates are drawn and evaluated one after the other, so exactly `n`
/// objective evaluations are consumed.
pub fn init_population<R: RngCore>(problem: &Problem, n: usize, rng: &mut R) -> Vec<Candidate> {
    (0..n)
        .map(|_| {
            let position = (0..problem.dim())
                .map(|_| rng::uniform(rng, problem.lower(), problem.upper()))
                .collect();
            Candidate::evaluated(problem, position, rng)
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rng::run_rng;

    fn unit_box(dim: usize) -> Problem {
        Problem::from_fn("sum", dim, -1.0, 1.0, |x| x.iter().sum()).unwrap()
    }

    #[test]
    fn clamp_identity_inside() {
        let p = unit_box(2);
        assert_eq!(p.clamped(vec![0.5, -0.5]), vec![0.5, -0.5]);
    }

    #[test]
    fn clamp_saturates() {
        let p = unit_box(2);
        assert_eq!(p.clamped(vec![2.0, -3.0]), vec![1.0, -1.0]);
    }

    #[test]
    fn clamp_boundary_is_fixed() {
        let p = Problem::from_fn("b", 1, 1.0, 2.0, |x| x[0]).unwrap();
        assert_eq!(p.clamped(vec![1.0]), vec![1.0]);
    }

    #[test]
    fn rejects_bad_bounds_and_dim() {
        assert!(Problem::from_fn("x", 0, 0.0, 1.0, |_| 0.0).is_err());
        assert!(Problem::from_fn("x", 1, 1.0, 1.0, |_| 0.0).is_err());
        assert!(Problem::from_fn("x", 1, 2.0, 1.0, |_| 0.0).is_err());
    }

    #[test]
    fn population_in_bounds() {
        let p = unit_box(3);
        let pop = init_population(&p, 5, &mut run_rng(0));
        assert_eq!(pop.len(), 5);
        assert!(pop.iter().all(|c| c.position.len() == 3 && p.contains(&c.position)));
    }

    #[test]
    fn population_deterministic() {
        let p = unit_box(3);
        let a = init_population(&p, 5, &mut run_rng(42));
        let b = init_population(&p, 5, &mut run_rng(42));
        assert_eq!(a, b);
    }

    #[test]
    fn population_fitness_is_evaluated() {
        let p = unit_box(4);
        for c in init_population(&p, 10, &mut run_rng(1)) {
            assert_eq!(c.fitness, c.position.iter().sum::<f64>());
        }
    }
}
