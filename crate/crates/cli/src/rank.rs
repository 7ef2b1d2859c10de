//! The `rank` report: per-function placements and mean placement scores.

use std::fmt::Write;

use anyhow::{bail, Result};
use cddohs_core::stats::{rank_algorithms, RankTable, TieRule};

use crate::reference::ReferenceTable;

pub fn parse_tie_rule(s: &str) -> Result<TieRule> {
    Ok(match s.trim().to_ascii_lowercase().as_str() {
        "average" | "avg" | "mid" => TieRule::Average,
        "min" => TieRule::Min,
        other => bail!("unknown tie rule `{other}` (expected average or min)"),
    })
}

pub fn rank_table(table: &ReferenceTable, tie: TieRule) -> Result<RankTable> {
    Ok(rank_algorithms(&table.rank_rows(), tie)?)
}

/// Placements as a wide CSV followed by a `score` row, then the standings.
pub fn render(ranks: &RankTable) -> String {
    let mut out = String::from("func");
    for a in &ranks.algorithms {
        write!(out, ",{a}").unwrap();
    }
    out.push('\n');
    for (f, row) in ranks.functions.iter().zip(&ranks.placements) {
        out.push_str(f);
        for p in row {
            write!(out, ",{p}").unwrap();
        }
        out.push('\n');
    }
    out.push_str("score");
    for s in &ranks.scores {
        write!(out, ",{}", round(*s)).unwrap();
    }
    out.push('\n');
    for (i, (a, s)) in ranks.standings().into_iter().enumerate() {
        writeln!(out, "# {}. {a} {}", i + 1, round(s)).unwrap();
    }
    out
}

fn round(v: f64) -> f64 {
    (v * 1e4).round() / 1e4
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::reference::parse_wide;

    #[test]
    fn renders_placements_and_scores() {
        let t = parse_wide("in", "func,a,b,c\nF1,3,1,2\nF2,1,1,5\n".as_bytes()).unwrap();
        let r = rank_table(&t, TieRule::Average).unwrap();
        assert_eq!(
            render(&r),
            "func,a,b,c\nF1,3,1,2\nF2,1.5,1.5,3\nscore,2.25,1.25,2.5\n# 1. b 1.25\n# 2. a 2.25\n# 3. c 2.5\n"
        );
        let r = rank_table(&t, parse_tie_rule("min").unwrap()).unwrap();
        assert_eq!(r.placements[1], vec![1.0, 1.0, 3.0]);
        assert!(parse_tie_rule("max").is_err());
    }
}
