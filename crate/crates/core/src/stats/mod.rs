//! Multi-run summaries, the two-sample Wilcoxon rank-sum test, and
//! placement-based ranking of algorithms across functions.

mod ranking;
mod summary;
mod wilcoxon;

pub use ranking::{rank_algorithms, RankTable, TieRule};
pub use summary::{summarize, SampleSummary};
pub use wilcoxon::{midranks, rank_sum_exact, rank_sum_normal, wilcoxon_rank_sum, EXACT_MAX_TOTAL};

/// Conventional significance level for counting wins.
pub const SIGNIFICANCE: f64 = 0.05;
