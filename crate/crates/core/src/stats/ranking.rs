//! Per-function placement of algorithms (1 = lowest average) and the mean
//! placement score per algorithm; lower scores are better.

use crate::error::{Error, Result};

/// How tied averages are placed.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum TieRule {
    /// Tied algorithms share the mean of the places they occupy (1, 2.5, 2.5, 4).
    #[default]
    Average,
    /// Tied algorithms share the best place they occupy (1, 2, 2, 4).
    Min,
}

#[derive(Debug, Clone, PartialEq)]
pub struct RankTable {
    /// Column order, taken from the first input row.
    pub algorithms: Vec<String>,
    pub functions: Vec<String>,
    /// `placements[f][a]`: place of algorithm `a` on function `f`.
    pub placements: Vec<Vec<f64>>,
    /// Mean placement per algorithm.
    pub scores: Vec<f64>,
}

impl RankTable {
    pub fn score(&self, algorithm: &str) -> Option<f64> {
        self.algorithms
            .iter()
            .position(|a| a == algorithm)
            .map(|i| self.scores[i])
    }

    /// Algorithms with their scores, best first (ties keep column order).
    pub fn standings(&self) -> Vec<(&str, f64)> {
        let mut out: Vec<(&str, f64)> = self
            .algorithms
            .iter()
            .map(String::as_str)
            .zip(self.scores.iter().copied())
            .collect();
        out.sort_by(|a, b| a.1.total_cmp(&b.1));
        out
    }
}

/// Ranks algorithms per function by ascending average.
///
/// `rows` holds `(function, [(algorithm, avg)])`; every row must name the same
/// set of algorithms.
pub fn rank_algorithms(rows: &[(String, Vec<(String, f64)>)], tie: TieRule) -> Result<RankTable> {
    let Some((_, first)) = rows.first() else {
        return Ok(RankTable {
            algorithms: Vec::new(),
            functions: Vec::new(),
            placements: Vec::new(),
            scores: Vec::new(),
        });
    };
    let algorithms: Vec<String> = first.iter().map(|(a, _)| a.clone()).collect();
    let mut placements = Vec::with_capacity(rows.len());
    for (func, cells) in rows {
        let mut avgs = Vec::with_capacity(algorithms.len());
        for algo in &algorithms {
            let hit = cells
                .iter()
                .filter(|(a, _)| a == algo)
                .map(|(_, v)| *v)
                .collect::<Vec<_>>();
            match hit.as_slice() {
                [v] => avgs.push(*v),
                _ => return Err(Error::InconsistentAlgorithms { func: func.clone() }),
            }
        }
        if cells.len() != algorithms.len() {
            return Err(Error::InconsistentAlgorithms { func: func.clone() });
        }
        placements.push(place(&avgs, tie));
    }
    let n = rows.len() as f64;
    let scores = (0..algorithms.len())
        .map(|a| placements.iter().map(|row| row[a]).sum::<f64>() / n)
        .collect();
    Ok(RankTable {
        algorithms,
        functions: rows.iter().map(|(f, _)| f.clone()).collect(),
        placements,
        scores,
    })
}

fn place(avgs: &[f64], tie: TieRule) -> Vec<f64> {
    let mut order: Vec<usize> = (0..avgs.len()).collect();
    order.sort_by(|&a, &b| avgs[a].total_cmp(&avgs[b]));
    let mut out = vec![0.0; avgs.len()];
    let mut start = 0;
    while start < order.len() {
        let mut end = start;
        while end + 1 < order.len() && avgs[order[end + 1]].total_cmp(&avgs[order[start]]).is_eq() {
            end += 1;
        }
        let shared = match tie {
            TieRule::Average => (start + end) as f64 / 2.0 + 1.0,
            TieRule::Min => start as f64 + 1.0,
        };
        for &i in &order[start..=end] {
            out[i] = shared;
        }
        start = end + 1;
    }
    out
}
