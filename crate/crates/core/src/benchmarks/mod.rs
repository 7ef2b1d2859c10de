//! The 19 classical benchmark functions (unimodal F1–F7, multimodal F8–F13,
//! fixed-dimension F14–F19) and a registry that also accepts external problems.

mod constants;
pub mod functions;

use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use rand::RngCore;

use crate::error::{Error, Result};
use crate::problem::{Objective, Problem};
use crate::rng;

pub use constants::{foxhole, HARTMANN3_A, HARTMANN3_C, HARTMANN3_P, KOWALIK_A, KOWALIK_INV_B};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum FunctionId {
    F1,
    F2,
    F3,
    F4,
    F5,
    F6,
    F7,
    F8,
    F9,
    F10,
    F11,
    F12,
    F13,
    F14,
    F15,
    F16,
    F17,
    F18,
    F19,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Family {
    Unimodal,
    Multimodal,
    FixedDimension,
}

/// Table metadata of one classical function.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BenchmarkSpec {
    pub id: FunctionId,
    pub family: Family,
    pub dim: usize,
    pub lower: f64,
    pub upper: f64,
    /// Tabulated minimum, at the precision it is usually quoted.
    pub f_min: f64,
    /// Minimum to full double precision (value at [`FunctionId::minimizer`]).
    pub exact_min: f64,
    pub stochastic: bool,
}

/// Schwefel's minimum per dimension, `-x sin(sqrt|x|)` at `x = 420.968746`.
pub const SCHWEFEL_MIN_PER_DIM: f64 = -418.982_887_272_433_8;

impl FunctionId {
    pub const ALL: [FunctionId; 19] = [
        Self::F1,
        Self::F2,
        Self::F3,
        Self::F4,
        Self::F5,
        Self::F6,
        Self::F7,
        Self::F8,
        Self::F9,
        Self::F10,
        Self::F11,
        Self::F12,
        Self::F13,
        Self::F14,
        Self::F15,
        Self::F16,
        Self::F17,
        Self::F18,
        Self::F19,
    ];

    pub fn number(self) -> usize {
        self as usize + 1
    }

    pub fn family(self) -> Family {
        match self.number() {
            1..=7 => Family::Unimodal,
            8..=13 => Family::Multimodal,
            _ => Family::FixedDimension,
        }
    }

    pub fn spec(self) -> BenchmarkSpec {
        use FunctionId::*;
        // (dim, lower, upper, f_min, exact_min)
        let (dim, lower, upper, f_min, exact_min) = match self {
            F1 => (10, -100.0, 100.0, 0.0, 0.0),
            F2 => (10, -10.0, 10.0, 0.0, 0.0),
            F3 => (10, -30.0, 30.0, 0.0, 0.0),
            F4 => (10, -100.0, 100.0, 0.0, 0.0),
            F5 => (10, -30.0, 30.0, 0.0, 0.0),
            F6 => (10, -100.0, 100.0, 0.0, 0.0),
            F7 => (10, -1.28, 1.28, 0.0, 0.0),
            F8 => (30, -500.0, 500.0, -12569.5, 30.0 * SCHWEFEL_MIN_PER_DIM),
            F9 => (10, -10.0, 10.0, 0.0, 0.0),
            F10 => (10, -32.0, 32.0, 0.0, 0.0),
            F11 => (10, -600.0, 600.0, 0.0, 0.0),
            F12 => (10, -50.0, 50.0, 0.0, 0.0),
            F13 => (30, -50.0, 50.0, 0.0, 0.0),
            F14 => (2, -65.0, 65.0, 1.0, 0.998_003_837_794_449_3),
            F15 => (4, -5.0, 5.0, 0.0003, 3.074_859_878_056_93e-4),
            F16 => (2, -5.0, 5.0, -1.0316, -1.031_628_453_489_877),
            F17 => (2, -5.0, 5.0, 0.398, 0.397_887_357_729_738),
            F18 => (2, -2.0, 2.0, 3.0, 3.0),
            F19 => (3, 0.0, 1.0, -3.86, -3.862_782_147_820_755),
        };
        BenchmarkSpec {
            id: self,
            family: self.family(),
            dim,
            lower,
            upper,
            f_min,
            exact_min,
            stochastic: self == F7,
        }
    }

    /// A canonical global minimizer at the function's own dimension.
    pub fn minimizer(self) -> Vec<f64> {
        use FunctionId::*;
        let dim = self.spec().dim;
        match self {
            F1 | F2 | F3 | F4 | F6 | F7 | F9 | F10 | F11 => vec![0.0; dim],
            F5 | F13 => vec![1.0; dim],
            F8 => vec![420.968_746_04; dim],
            F12 => vec![-1.0; dim],
            F14 => vec![-31.978_333_4, -31.978_334_0],
            F15 => vec![0.192_833_45, 0.190_836_24, 0.123_117_3, 0.135_765_99],
            F16 => vec![0.089_842_013_1, -0.712_656_403],
            F17 => vec![std::f64::consts::PI, 2.275],
            F18 => vec![0.0, -1.0],
            F19 => vec![0.114_614_34, 0.555_648_85, 0.852_546_95],
        }
    }

    /// The formula at any input length the formula accepts; F7 adds its
    /// `random[0, 1)` term from `rng`.
    pub fn formula(self, x: &[f64], rng: &mut dyn RngCore) -> f64 {
        use functions::*;
        use FunctionId::*;
        match self {
            F1 => sphere(x),
            F2 => schwefel_2_22(x),
            F3 => schwefel_1_2(x),
            F4 => schwefel_2_21(x),
            F5 => rosenbrock(x),
            F6 => step(x),
            F7 => quartic(x) + rng::uniform(rng, 0.0, 1.0),
            F8 => schwefel(x),
            F9 => rastrigin(x),
            F10 => ackley(x),
            F11 => griewank(x),
            F12 => penalized_1(x),
            F13 => penalized_2(x),
            F14 => foxholes(x),
            F15 => kowalik(x),
            F16 => six_hump_camel(x),
            F17 => branin(x),
            F18 => goldstein_price(x),
            F19 => hartmann3(x),
        }
    }

    /// The formula with its input length checked against the table dimension.
    pub fn evaluate_at(self, x: &[f64], rng: &mut dyn RngCore) -> Result<f64> {
        let dim = self.spec().dim;
        if x.len() != dim {
            return Err(Error::DimensionMismatch {
                id: self.to_string(),
                expected: dim,
                actual: x.len(),
            });
        }
        Ok(self.formula(x, rng))
    }

    pub fn problem(self) -> Problem {
        let s = self.spec();
        Problem::new(self.to_string(), s.dim, s.lower, s.upper, Arc::new(Benchmark(self)))
            .expect("table bounds are valid")
            .with_known_min(s.f_min)
    }
}

impl fmt::Display for FunctionId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "F{}", self.number())
    }
}

impl FromStr for FunctionId {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let t = s.trim();
        t.strip_prefix(['F', 'f'])
            .and_then(|n| n.parse::<usize>().ok())
            .filter(|n| (1..=19).contains(n))
            .map(|n| Self::ALL[n - 1])
            .ok_or_else(|| Error::UnknownFunction(s.to_string()))
    }
}

/// [`Problem`] for a classical function.
pub fn make_function(id: FunctionId) -> Problem {
    id.problem()
}

pub fn evaluate_at(id: FunctionId, x: &[f64], rng: &mut dyn RngCore) -> Result<f64> {
    id.evaluate_at(x, rng)
}

struct Benchmark(FunctionId);

impl Objective for Benchmark {
    fn evaluate(&self, x: &[f64], rng: &mut dyn RngCore) -> f64 {
        self.0.formula(x, rng)
    }

    fn is_stochastic(&self) -> bool {
        self.0 == FunctionId::F7
    }
}

/// Problems addressable by string id. Starts with F1..F19; external problems
/// can be added with [`Registry::register`].
#[derive(Debug, Clone)]
pub struct Registry {
    problems: Vec<Problem>,
}

impl Default for Registry {
    fn default() -> Self {
        Self::classical()
    }
}

impl Registry {
    pub fn classical() -> Self {
        Self {
            problems: FunctionId::ALL.iter().map(|id| id.problem()).collect(),
        }
    }

    /// Adds a problem, replacing any existing one with the same id.
    pub fn register(&mut self, problem: Problem) {
        match self.problems.iter_mut().find(|p| p.id() == problem.id()) {
            Some(slot) => *slot = problem,
            None => self.problems.push(problem),
        }
    }

    pub fn get(&self, id: &str) -> Result<&Problem> {
        let canonical = id.parse::<FunctionId>().map(|f| f.to_string());
        let key = canonical.as_deref().unwrap_or(id);
        self.problems
            .iter()
            .find(|p| p.id() == key)
            .ok_or_else(|| Error::UnknownFunction(id.to_string()))
    }

    pub fn iter(&self) -> impl Iterator<Item = &Problem> {
        self.problems.iter()
    }
}

#[cfg(test)]
mod tests;
