//! Runs (algorithm × function × run) grids and writes the result artifacts.
//!
//! Run `r` of the cell (`algo`, `func`) is seeded with
//! `(base_seed ^ fnv1a("algo/func")) + r`, so any single cell can be replayed
//! on its own. Runs execute in parallel; results are gathered back into
//! canonical order (functions in registry order, algorithms in
//! [`Algorithm::ALL`] order, runs ascending) before anything is written.

use std::hash::Hasher;
use std::io::Write;
use std::path::{Path, PathBuf};

use anyhow::{bail, Context, Result};
use cddohs_core::stats::{summarize, wilcoxon_rank_sum};
use cddohs_core::{Registry, RunConfig, RunResult};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::algorithm::Algorithm;

pub const SUMMARY_FILE: &str = "summary.csv";
pub const PVALUES_FILE: &str = "pvalues.csv";
pub const JSON_FILE: &str = "results.json";
pub const CONVERGENCE_DIR: &str = "convergence";

pub const SUMMARY_HEADER: [&str; 8] = ["algo", "func", "avg", "std", "best", "worst", "n_runs", "seed"];
pub const CONVERGENCE_HEADER: [&str; 3] = ["run", "iter", "gbest"];
pub const PVALUES_HEADER: [&str; 4] = ["func", "algo_a", "algo_b", "p_value"];

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Formats {
    pub csv: bool,
    pub json: bool,
}

impl Formats {
    pub const BOTH: Formats = Formats { csv: true, json: true };

    pub fn parse(s: &str) -> Result<Self> {
        Ok(match s.trim().to_ascii_lowercase().as_str() {
            "csv" => Formats { csv: true, json: false },
            "json" => Formats { csv: false, json: true },
            "both" => Self::BOTH,
            other => bail!("unknown format `{other}` (expected csv, json or both)"),
        })
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct ExperimentPlan {
    pub algorithms: Vec<Algorithm>,
    /// Problem ids as known to the registry.
    pub functions: Vec<String>,
    pub config: RunConfig,
    pub output_dir: PathBuf,
    pub formats: Formats,
}

impl ExperimentPlan {
    pub fn validate(&self, registry: &Registry) -> Result<()> {
        if self.algorithms.is_empty() {
            bail!("no algorithms selected");
        }
        if self.functions.is_empty() {
            bail!("no functions selected");
        }
        if !self.formats.csv && !self.formats.json {
            bail!("no output format selected");
        }
        for f in &self.functions {
            registry.get(f)?;
        }
        self.config.validate()?;
        Ok(())
    }
}

/// Resolves `classical`, `all` or a comma-separated list of ids into
/// canonical ids in registry order.
pub fn resolve_functions(spec: &str, registry: &Registry) -> Result<Vec<String>> {
    let ids: Vec<&str> = registry.iter().map(|p| p.id()).collect();
    let mut picked = Vec::new();
    for part in spec.split(',').map(str::trim) {
        match part.to_ascii_lowercase().as_str() {
            "all" => picked.extend(0..ids.len()),
            "classical" => picked.extend(
                cddohs_core::FunctionId::ALL
                    .iter()
                    .filter_map(|f| ids.iter().position(|id| *id == f.to_string())),
            ),
            _ => {
                let id = registry.get(part)?.id();
                picked.push(ids.iter().position(|x| *x == id).expect("registry id"));
            }
        }
    }
    picked.sort_unstable();
    picked.dedup();
    Ok(picked.into_iter().map(|i| ids[i].to_string()).collect())
}

/// 64-bit FNV-1a of `"algo/func"`.
pub fn cell_hash(algo: &str, func: &str) -> u64 {
    let mut h = fnv::FnvHasher::default();
    h.write(format!("{algo}/{func}").as_bytes());
    h.finish()
}

pub fn cell_seed(base_seed: u64, algo: &str, func: &str) -> u64 {
    base_seed ^ cell_hash(algo, func)
}

#[derive(Debug, Clone, PartialEq)]
pub struct CellResult {
    pub algo: Algorithm,
    pub func: String,
    /// Run `r` used `seed + r`.
    pub seed: u64,
    pub runs: Vec<RunResult>,
}

impl CellResult {
    pub fn best_fitnesses(&self) -> Vec<f64> {
        self.runs.iter().map(|r| r.best_fitness).collect()
    }

    pub fn summary_row(&self) -> SummaryRow {
        let s = summarize(&self.best_fitnesses()).expect("cells hold at least one run");
        SummaryRow {
            algo: self.algo.name().to_string(),
            func: self.func.clone(),
            avg: s.avg,
            std: s.std,
            best: s.min,
            worst: s.max,
            n_runs: s.n,
            seed: self.seed,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SummaryRow {
    pub algo: String,
    pub func: String,
    pub avg: f64,
    pub std: f64,
    pub best: f64,
    pub worst: f64,
    pub n_runs: usize,
    pub seed: u64,
}

/// Two-sided rank-sum p of the final best fitnesses; `None` when either
/// sample is too small for the test.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PValueRow {
    pub func: String,
    pub algo_a: String,
    pub algo_b: String,
    pub p_value: Option<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ConvergenceRecord {
    pub algo: String,
    pub func: String,
    /// `traces[run][iter - 1]`
    pub traces: Vec<Vec<f64>>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConfigRecord {
    pub pop_size: usize,
    pub max_iters: usize,
    pub n_runs: usize,
    pub base_seed: u64,
}

/// Layout of `results.json`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ResultsDocument {
    pub config: ConfigRecord,
    pub summary: Vec<SummaryRow>,
    pub pvalues: Vec<PValueRow>,
    pub convergence: Vec<ConvergenceRecord>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Experiment {
    pub config: RunConfig,
    /// Function-major, algorithms in canonical order.
    pub cells: Vec<CellResult>,
}

impl Experiment {
    pub fn cell(&self, algo: Algorithm, func: &str) -> Option<&CellResult> {
        self.cells.iter().find(|c| c.algo == algo && c.func == func)
    }

    pub fn summary(&self) -> Vec<SummaryRow> {
        self.cells.iter().map(CellResult::summary_row).collect()
    }

    /// One row per algorithm pair per function.
    pub fn pvalues(&self) -> Vec<PValueRow> {
        let mut out = Vec::new();
        let mut start = 0;
        while start < self.cells.len() {
            let func = &self.cells[start].func;
            let end = start + self.cells[start..].iter().take_while(|c| &c.func == func).count();
            let group = &self.cells[start..end];
            for (i, a) in group.iter().enumerate() {
                for b in &group[i + 1..] {
                    out.push(PValueRow {
                        func: func.clone(),
                        algo_a: a.algo.name().to_string(),
                        algo_b: b.algo.name().to_string(),
                        p_value: wilcoxon_rank_sum(&a.best_fitnesses(), &b.best_fitnesses()).ok(),
                    });
                }
            }
            start = end;
        }
        out
    }

    pub fn convergence(&self) -> Vec<ConvergenceRecord> {
        self.cells
            .iter()
            .map(|c| ConvergenceRecord {
                algo: c.algo.name().to_string(),
                func: c.func.clone(),
                traces: c.runs.iter().map(|r| r.trace.clone()).collect(),
            })
            .collect()
    }

    pub fn document(&self) -> ResultsDocument {
        ResultsDocument {
            config: ConfigRecord {
                pop_size: self.config.pop_size,
                max_iters: self.config.max_iters,
                n_runs: self.config.n_runs,
                base_seed: self.config.base_seed,
            },
            summary: self.summary(),
            pvalues: self.pvalues(),
            convergence: self.convergence(),
        }
    }
}

/// Runs every cell of the plan without touching the filesystem.
pub fn execute(plan: &ExperimentPlan, registry: &Registry) -> Result<Experiment> {
    plan.validate(registry)?;
    let mut cells = Vec::new();
    for func in &plan.functions {
        let problem = registry.get(func)?;
        for &algo in &plan.algorithms {
            cells.push((
                algo,
                problem,
                cell_seed(plan.config.base_seed, algo.name(), problem.id()),
            ));
        }
    }
    let jobs: Vec<(usize, usize)> = (0..cells.len())
        .flat_map(|c| (0..plan.config.n_runs).map(move |r| (c, r)))
        .collect();
    let mut results = jobs
        .par_iter()
        .map(|&(c, r)| {
            let (algo, problem, seed) = cells[c];
            algo.optimizer()
                .run(problem, &plan.config, seed.wrapping_add(r as u64))
                .with_context(|| format!("{algo} on {}", problem.id()))
        })
        .collect::<Result<Vec<_>>>()?
        .into_iter();
    let cells = cells
        .iter()
        .map(|&(algo, problem, seed)| CellResult {
            algo,
            func: problem.id().to_string(),
            seed,
            runs: results.by_ref().take(plan.config.n_runs).collect(),
        })
        .collect();
    Ok(Experiment {
        config: plan.config,
        cells,
    })
}

/// Validates the plan, checks the output directory, runs the grid and writes
/// the artifacts.
pub fn run_experiment(plan: &ExperimentPlan, registry: &Registry) -> Result<Experiment> {
    plan.validate(registry)?;
    ensure_writable(&plan.output_dir)?;
    let experiment = execute(plan, registry)?;
    write_artifacts(&experiment, &plan.output_dir, plan.formats)?;
    Ok(experiment)
}

fn ensure_writable(dir: &Path) -> Result<()> {
    std::fs::create_dir_all(dir).with_context(|| format!("creating {}", dir.display()))?;
    tempfile::NamedTempFile::new_in(dir)
        .with_context(|| format!("output directory {} is not writable", dir.display()))?;
    Ok(())
}

/// Number formatting shared by every CSV artifact: 17 significant digits,
/// which round-trips any `f64`.
pub fn fmt_f64(v: f64) -> String {
    format!("{v:.16e}")
}

/// Writes the selected artifacts, replacing earlier files atomically.
/// Returns the paths written.
pub fn write_artifacts(experiment: &Experiment, dir: &Path, formats: Formats) -> Result<Vec<PathBuf>> {
    ensure_writable(dir)?;
    let mut written = Vec::new();
    if formats.csv {
        let path = dir.join(SUMMARY_FILE);
        write_atomic(&path, &summary_csv(&experiment.summary())?)?;
        written.push(path);

        let path = dir.join(PVALUES_FILE);
        write_atomic(&path, &pvalues_csv(&experiment.pvalues())?)?;
        written.push(path);

        let conv_dir = dir.join(CONVERGENCE_DIR);
        std::fs::create_dir_all(&conv_dir).with_context(|| format!("creating {}", conv_dir.display()))?;
        for record in experiment.convergence() {
            let path = conv_dir.join(convergence_file_name(&record.algo, &record.func));
            write_atomic(&path, &convergence_csv(&record.traces)?)?;
            written.push(path);
        }
    }
    if formats.json {
        let path = dir.join(JSON_FILE);
        let mut text = serde_json::to_vec_pretty(&experiment.document())?;
        text.push(b'\n');
        write_atomic(&path, &text)?;
        written.push(path);
    }
    Ok(written)
}

pub fn convergence_file_name(algo: &str, func: &str) -> String {
    format!("{algo}_{func}.csv")
}

fn write_atomic(path: &Path, bytes: &[u8]) -> Result<()> {
    let dir = path.parent().unwrap_or(Path::new("."));
    let mut tmp = tempfile::NamedTempFile::new_in(dir).with_context(|| format!("writing {}", path.display()))?;
    tmp.write_all(bytes)?;
    tmp.flush()?;
    tmp.persist(path)
        .with_context(|| format!("replacing {}", path.display()))?;
    Ok(())
}

fn csv_bytes(header: &[&str], rows: impl IntoIterator<Item = Vec<String>>) -> Result<Vec<u8>> {
    let mut w = csv::WriterBuilder::new()
        .terminator(csv::Terminator::Any(b'\n'))
        .from_writer(Vec::new());
    w.write_record(header)?;
    for row in rows {
        w.write_record(&row)?;
    }
    Ok(w.into_inner().map_err(|e| e.into_error())?)
}

pub fn summary_csv(rows: &[SummaryRow]) -> Result<Vec<u8>> {
    csv_bytes(
        &SUMMARY_HEADER,
        rows.iter().map(|r| {
            vec![
                r.algo.clone(),
                r.func.clone(),
                fmt_f64(r.avg),
                fmt_f64(r.std),
                fmt_f64(r.best),
                fmt_f64(r.worst),
                r.n_runs.to_string(),
                r.seed.to_string(),
            ]
        }),
    )
}

pub fn pvalues_csv(rows: &[PValueRow]) -> Result<Vec<u8>> {
    csv_bytes(
        &PVALUES_HEADER,
        rows.iter().map(|r| {
            vec![
                r.func.clone(),
                r.algo_a.clone(),
                r.algo_b.clone(),
                r.p_value.map(fmt_f64).unwrap_or_default(),
            ]
        }),
    )
}

/// `run` is 0-based (seed offset), `iter` 1-based.
pub fn convergence_csv(traces: &[Vec<f64>]) -> Result<Vec<u8>> {
    csv_bytes(
        &CONVERGENCE_HEADER,
        traces.iter().enumerate().flat_map(|(run, trace)| {
            trace
                .iter()
                .enumerate()
                .map(move |(i, g)| vec![run.to_string(), (i + 1).to_string(), fmt_f64(*g)])
        }),
    )
}

fn check_header<R: std::io::Read>(reader: &mut csv::Reader<R>, expected: &[&str]) -> Result<()> {
    let header = reader.headers()?;
    if header.iter().ne(expected.iter().copied()) {
        bail!(
            "unexpected header `{}` (expected `{}`)",
            header.iter().collect::<Vec<_>>().join(","),
            expected.join(",")
        );
    }
    Ok(())
}

pub fn read_summary_csv<R: std::io::Read>(input: R) -> Result<Vec<SummaryRow>> {
    let mut reader = csv::Reader::from_reader(input);
    check_header(&mut reader, &SUMMARY_HEADER)?;
    reader
        .deserialize()
        .map(|r| r.context("malformed summary row"))
        .collect()
}

pub fn read_pvalues_csv<R: std::io::Read>(input: R) -> Result<Vec<PValueRow>> {
    let mut reader = csv::Reader::from_reader(input);
    check_header(&mut reader, &PVALUES_HEADER)?;
    reader
        .deserialize()
        .map(|r| r.context("malformed p-value row"))
        .collect()
}

/// Parses a convergence CSV back into `traces[run]`.
pub fn read_convergence_csv<R: std::io::Read>(input: R) -> Result<Vec<Vec<f64>>> {
    let mut reader = csv::Reader::from_reader(input);
    check_header(&mut reader, &CONVERGENCE_HEADER)?;
    let mut traces: Vec<Vec<f64>> = Vec::new();
    for row in reader.deserialize::<(usize, usize, f64)>() {
        let (run, iter, gbest) = row.context("malformed convergence row")?;
        if run == traces.len() {
            traces.push(Vec::new());
        }
        match traces.get_mut(run) {
            Some(t) if iter == t.len() + 1 => t.push(gbest),
            _ => bail!("convergence rows out of order at run {run}, iter {iter}"),
        }
    }
    Ok(traces)
}

/// Reads a summary from `summary.csv` or from the `summary` array of
/// `results.json` (chosen by extension).
pub fn load_summary(path: &Path) -> Result<Vec<SummaryRow>> {
    let file = std::fs::File::open(path).with_context(|| format!("opening {}", path.display()))?;
    let is_json = path.extension().is_some_and(|e| e.eq_ignore_ascii_case("json"));
    if is_json {
        let doc: ResultsDocument = serde_json::from_reader(std::io::BufReader::new(file))
            .with_context(|| format!("parsing {}", path.display()))?;
        Ok(doc.summary)
    } else {
        read_summary_csv(file).with_context(|| format!("parsing {}", path.display()))
    }
}
