use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{bail, Result};
use cddohs_cli::{compare, experiment, rank, reference, Algorithm, ExperimentPlan, Formats, ReferenceTable};
use cddohs_core::{Registry, RunConfig};
use clap::{Parser, Subcommand};

#[derive(Parser)]
#[command(
    name = "cddohs",
    version,
    about = "CDDO, harmony search and CDDO-HS benchmark runner"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run an algorithm × function grid and write summary, convergence and p-value artifacts.
    Run {
        /// cddo, hs, cddo-hs, all, or a comma-separated list.
        #[arg(long, default_value = "all")]
        algo: String,
        /// F1..F19, classical, all, or a comma-separated list.
        #[arg(long, default_value = "classical")]
        func: String,
        #[arg(long, default_value_t = 40)]
        pop: usize,
        #[arg(long, default_value_t = 500)]
        iters: usize,
        #[arg(long, default_value_t = 30)]
        runs: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value = "results")]
        out: PathBuf,
        /// csv, json or both.
        #[arg(long, default_value = "both")]
        format: String,
    },
    /// Compare a summary (summary.csv or results.json) with a published table.
    Compare {
        #[arg(long)]
        summary: PathBuf,
        #[arg(long, default_value = "table2")]
        reference: String,
    },
    /// Rank algorithms per function by average and print mean placement scores.
    Rank {
        /// Wide CSV: `func,<algo>,<algo>,...`, one row of averages per function.
        #[arg(long, conflicts_with = "reference", required_unless_present = "reference")]
        input: Option<PathBuf>,
        /// An embedded table instead of --input (table6).
        #[arg(long)]
        reference: Option<String>,
        /// Tie handling: average (midranks) or min.
        #[arg(long, default_value = "average")]
        tie: String,
    },
    /// Print the function registry.
    List,
}

fn run(cli: Cli) -> Result<()> {
    let registry = Registry::classical();
    match cli.command {
        Command::Run {
            algo,
            func,
            pop,
            iters,
            runs,
            seed,
            out,
            format,
        } => {
            let plan = ExperimentPlan {
                algorithms: Algorithm::parse_list(&algo)?,
                functions: experiment::resolve_functions(&func, &registry)?,
                config: RunConfig {
                    pop_size: pop,
                    max_iters: iters,
                    n_runs: runs,
                    base_seed: seed,
                },
                output_dir: out,
                formats: Formats::parse(&format)?,
            };
            let exp = experiment::run_experiment(&plan, &registry)?;
            eprintln!(
                "{} cells × {} runs written to {}",
                exp.cells.len(),
                plan.config.n_runs,
                plan.output_dir.display()
            );
        }
        Command::Compare { summary, reference } => {
            let table = ReferenceTable::by_name(&reference)?;
            let rows = experiment::load_summary(&summary)?;
            print!("{}", compare::compare_to_reference(&rows, &table).render());
        }
        Command::Rank { input, reference, tie } => {
            let tie = rank::parse_tie_rule(&tie)?;
            let table = match (input, reference) {
                (Some(path), None) => {
                    let file =
                        std::fs::File::open(&path).map_err(|e| anyhow::anyhow!("opening {}: {e}", path.display()))?;
                    reference::parse_wide(&path.display().to_string(), file)?
                }
                (None, Some(name)) => ReferenceTable::by_name(&name)?,
                _ => bail!("pass exactly one of --input or --reference"),
            };
            print!("{}", rank::render(&rank::rank_table(&table, tie)?));
        }
        Command::List => print!("{}", cddohs_cli::registry_listing(&registry)),
    }
    Ok(())
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::FAILURE
        }
    }
}
