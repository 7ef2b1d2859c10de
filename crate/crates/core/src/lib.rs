//! Child drawing development optimization (CDDO), harmony search (HS) and the
//! CDDO–HS hybrid, together with the classical benchmark suite and the rank
//! statistics used to compare them.
//!
//! Every algorithm is a pure function of `(problem, config, params, seed)`:
//! one explicitly seeded [`RunRng`] is threaded through every stochastic
//! operation, so repeated runs produce bit-identical results.

pub mod benchmarks;
pub mod cddo;
mod error;
pub mod hs;
pub mod hybrid;
mod problem;
pub mod rng;
mod run;
pub mod stats;

pub use benchmarks::{BenchmarkSpec, Family, FunctionId, Registry};
pub use cddo::{Cddo, CddoParams, CddoState, PatternMemory, PatternSize};
pub use error::{Error, Result};
pub use hs::{HarmonyMemory, HarmonySearch, HsParams};
pub use hybrid::{CddoHs, HybridParams};
pub use problem::{init_population, Candidate, FnObjective, Objective, Problem};
pub use rng::RunRng;
pub use run::{Optimizer, RunConfig, RunResult};
