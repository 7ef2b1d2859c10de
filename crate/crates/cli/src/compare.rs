//! Measured summary vs a published table.
//!
//! Per (function, algorithm): measured and published averages and the
//! magnitude gap `|log10|measured| - log10|published||`. Per function: whether
//! the measured best algorithm is among the published best. In aggregate: how
//! often the table's first algorithm beats each of the others, measured and
//! published.

use std::fmt::Write;

use serde::Serialize;

use crate::experiment::SummaryRow;
use crate::reference::ReferenceTable;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ComparisonRow {
    pub func: String,
    pub algo: String,
    pub measured_avg: f64,
    /// `None` when the table has no such cell.
    pub published_avg: Option<f64>,
    /// Zero when both are zero, infinite when exactly one is.
    pub log10_gap: Option<f64>,
    /// Equal at the table's printed precision (4 significant digits).
    pub exact_match: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct WinnerRow {
    pub func: String,
    pub measured_winner: String,
    /// Several when the table prints a tie.
    pub published_winners: Vec<String>,
    pub agrees: bool,
}

/// The table's lead algorithm against one opponent, over functions where
/// both were measured.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct HeadToHead {
    pub algo: String,
    pub opponent: String,
    pub compared: usize,
    pub measured_wins: usize,
    pub published_wins: usize,
    pub agreements: usize,
}

#[derive(Debug, Clone, PartialEq, Default, Serialize)]
pub struct ComparisonReport {
    pub rows: Vec<ComparisonRow>,
    pub winners: Vec<WinnerRow>,
    pub head_to_head: Vec<HeadToHead>,
}

fn printed(v: f64) -> String {
    format!("{v:.3e}")
}

pub fn log10_gap(measured: f64, published: f64) -> f64 {
    match (measured == 0.0, published == 0.0) {
        (true, true) => 0.0,
        (false, false) => (measured.abs().log10() - published.abs().log10()).abs(),
        _ => f64::INFINITY,
    }
}

/// Algorithms whose value is the minimum of the row (exact ties share).
fn winners<'a>(cells: impl Iterator<Item = (&'a str, f64)> + Clone) -> Vec<String> {
    let best = cells.clone().map(|(_, v)| v).fold(f64::INFINITY, f64::min);
    cells.filter(|(_, v)| *v == best).map(|(a, _)| a.to_string()).collect()
}

pub fn compare_to_reference(summary: &[SummaryRow], table: &ReferenceTable) -> ComparisonReport {
    let mut funcs: Vec<&str> = Vec::new();
    for r in summary {
        if !funcs.contains(&r.func.as_str()) {
            funcs.push(&r.func);
        }
    }
    let table_pos = |f: &str| table.functions.iter().position(|x| x == f).unwrap_or(usize::MAX);
    funcs.sort_by_key(|f| table_pos(f));

    let measured = |func: &str, algo: &str| summary.iter().find(|r| r.func == func && r.algo == algo).map(|r| r.avg);
    let mut report = ComparisonReport::default();

    for &func in &funcs {
        for r in summary.iter().filter(|r| r.func == func) {
            let published = table.avg(func, &r.algo);
            report.rows.push(ComparisonRow {
                func: func.to_string(),
                algo: r.algo.clone(),
                measured_avg: r.avg,
                published_avg: published,
                log10_gap: published.map(|p| log10_gap(r.avg, p)),
                exact_match: published.is_some_and(|p| r.avg == p || printed(r.avg) == printed(p)),
            });
        }
        // Winner agreement only over algorithms present on both sides.
        let shared: Vec<(&str, f64, f64)> = table
            .algorithms
            .iter()
            .filter_map(|a| Some((a.as_str(), measured(func, a)?, table.avg(func, a)?)))
            .collect();
        if shared.len() >= 2 {
            let m = winners(shared.iter().map(|&(a, m, _)| (a, m)));
            let p = winners(shared.iter().map(|&(a, _, p)| (a, p)));
            report.winners.push(WinnerRow {
                func: func.to_string(),
                agrees: p.contains(&m[0]),
                measured_winner: m[0].clone(),
                published_winners: p,
            });
        }
    }

    if let Some(lead) = table.algorithms.first() {
        for opponent in &table.algorithms[1..] {
            let mut h = HeadToHead {
                algo: lead.clone(),
                opponent: opponent.clone(),
                compared: 0,
                measured_wins: 0,
                published_wins: 0,
                agreements: 0,
            };
            for &func in &funcs {
                let (Some(ml), Some(mo)) = (measured(func, lead), measured(func, opponent)) else {
                    continue;
                };
                h.compared += 1;
                let mwin = ml < mo;
                h.measured_wins += mwin as usize;
                if let (Some(pl), Some(po)) = (table.avg(func, lead), table.avg(func, opponent)) {
                    let pwin = pl < po;
                    h.published_wins += pwin as usize;
                    h.agreements += (pwin == mwin) as usize;
                }
            }
            if h.compared > 0 {
                report.head_to_head.push(h);
            }
        }
    }
    report
}

fn opt(v: Option<f64>) -> String {
    v.map(|v| format!("{v:.6e}")).unwrap_or_default()
}

impl ComparisonReport {
    pub fn is_empty(&self) -> bool {
        self.rows.is_empty()
    }

    /// CSV of the per-cell rows, then the per-function winners, then the
    /// aggregate counts as `#` lines.
    pub fn render(&self) -> String {
        let mut out = String::from("func,algo,measured_avg,published_avg,log10_gap,exact_match\n");
        for r in &self.rows {
            writeln!(
                out,
                "{},{},{:.6e},{},{},{}",
                r.func,
                r.algo,
                r.measured_avg,
                opt(r.published_avg),
                r.log10_gap.map(|g| format!("{g:.3}")).unwrap_or_default(),
                r.exact_match
            )
            .unwrap();
        }
        if !self.winners.is_empty() {
            out.push_str("\nfunc,measured_winner,published_winner,agrees\n");
            for w in &self.winners {
                writeln!(
                    out,
                    "{},{},{},{}",
                    w.func,
                    w.measured_winner,
                    w.published_winners.join("|"),
                    w.agrees
                )
                .unwrap();
            }
            let agree = self.winners.iter().filter(|w| w.agrees).count();
            writeln!(out, "# winner agreement: {agree} of {}", self.winners.len()).unwrap();
        }
        for h in &self.head_to_head {
            writeln!(
                out,
                "# {} beats {} on {} of {} functions (published: {}); direction agrees on {}",
                h.algo, h.opponent, h.measured_wins, h.compared, h.published_wins, h.agreements
            )
            .unwrap();
        }
        out
    }
}
