//! Experiment harness for `cddohs-core`: grid runner, artifact writers,
//! published reference tables, and the comparison and ranking reports behind
//! the `cddohs` binary.

pub mod algorithm;
pub mod compare;
pub mod experiment;
pub mod rank;
pub mod reference;

pub use algorithm::Algorithm;
pub use experiment::{execute, run_experiment, Experiment, ExperimentPlan, Formats, SummaryRow};
pub use reference::ReferenceTable;

use std::fmt::Write;

use cddohs_core::Registry;

/// The `list` table: one line per registered problem.
pub fn registry_listing(registry: &Registry) -> String {
    let mut out = String::from("id,dim,lower,upper,f_min,stochastic\n");
    for p in registry.iter() {
        let f_min = p.known_min().map(|v| v.to_string()).unwrap_or_default();
        writeln!(
            out,
            "{},{},{},{},{},{}",
            p.id(),
            p.dim(),
            p.lower(),
            p.upper(),
            f_min,
            p.is_stochastic()
        )
        .unwrap();
    }
    out
}
