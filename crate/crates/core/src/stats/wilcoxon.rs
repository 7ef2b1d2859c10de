//! Two-sided Wilcoxon rank-sum (Mann–Whitney) test with midranks for ties.
//!
//! Small samples (`n_a + n_b <= EXACT_MAX_TOTAL`) use the exact permutation
//! distribution of the rank sum given the observed midranks. Larger samples
//! use the normal approximation with tie-corrected variance and a 0.5
//! continuity correction.

use statrs::function::erf::erfc;

use crate::error::{Error, Result};

pub const EXACT_MAX_TOTAL: usize = 20;

/// 1-based midranks of `values` (ties share the mean of their positions).
pub fn midranks(values: &[f64]) -> Vec<f64> {
    doubled_midranks(values).into_iter().map(|r| r as f64 / 2.0).collect()
}

/// Twice the midranks, which are always integers.
fn doubled_midranks(values: &[f64]) -> Vec<u64> {
    let mut order: Vec<usize> = (0..values.len()).collect();
    order.sort_by(|&a, &b| values[a].total_cmp(&values[b]));
    let mut ranks = vec![0; values.len()];
    let mut start = 0;
    while start < order.len() {
        let mut end = start;
        while end + 1 < order.len() && values[order[end + 1]].total_cmp(&values[order[start]]).is_eq() {
            end += 1;
        }
        // positions start+1 ..= end+1, doubled mean = first + last
        let doubled = (start + 1 + end + 1) as u64;
        for &i in &order[start..=end] {
            ranks[i] = doubled;
        }
        start = end + 1;
    }
    ranks
}

fn check(a: &[f64], b: &[f64]) -> Result<()> {
    if a.len() < 2 || b.len() < 2 {
        return Err(Error::SampleTooSmall(a.len(), b.len()));
    }
    Ok(())
}

fn pooled(a: &[f64], b: &[f64]) -> Vec<f64> {
    a.iter().chain(b).copied().collect()
}

fn all_identical(values: &[f64]) -> bool {
    values.iter().all(|v| v.total_cmp(&values[0]).is_eq())
}

/// Two-sided p-value in `(0, 1]`; 1.0 when every observation is identical.
pub fn wilcoxon_rank_sum(a: &[f64], b: &[f64]) -> Result<f64> {
    if a.len() + b.len() <= EXACT_MAX_TOTAL {
        rank_sum_exact(a, b)
    } else {
        rank_sum_normal(a, b)
    }
}

/// Normal approximation with tie correction and continuity correction.
pub fn rank_sum_normal(a: &[f64], b: &[f64]) -> Result<f64> {
    check(a, b)?;
    let all = pooled(a, b);
    if all_identical(&all) {
        return Ok(1.0);
    }
    let (n1, n2) = (a.len() as f64, b.len() as f64);
    let n = n1 + n2;
    let ranks = doubled_midranks(&all);
    let r1 = ranks[..a.len()].iter().sum::<u64>() as f64 / 2.0;
    let u1 = r1 - n1 * (n1 + 1.0) / 2.0;
    let mean = n1 * n2 / 2.0;

    let mut sorted = ranks.clone();
    sorted.sort_unstable();
    let ties: f64 = sorted
        .chunk_by(|x, y| x == y)
        .map(|g| {
            let t = g.len() as f64;
            t * t * t - t
        })
        .sum();
    let var = n1 * n2 / 12.0 * ((n + 1.0) - ties / (n * (n - 1.0)));
    if var <= 0.0 {
        return Ok(1.0);
    }
    let z = ((u1 - mean).abs() - 0.5).max(0.0) / var.sqrt();
    Ok(erfc(z / std::f64::consts::SQRT_2).clamp(f64::MIN_POSITIVE, 1.0))
}

/// Exact permutation p-value, by dynamic programming over doubled rank sums.
pub fn rank_sum_exact(a: &[f64], b: &[f64]) -> Result<f64> {
    check(a, b)?;
    let all = pooled(a, b);
    if all_identical(&all) {
        return Ok(1.0);
    }
    let n1 = a.len();
    let n = all.len();
    let ranks = doubled_midranks(&all);
    let max_sum: u64 = ranks.iter().sum();

    // ways[k][s]: subsets of size k with doubled rank sum s
    let width = max_sum as usize + 1;
    let mut ways = vec![vec![0f64; width]; n1 + 1];
    ways[0][0] = 1.0;
    for &r in &ranks {
        let r = r as usize;
        for k in (1..=n1).rev() {
            let (lower, upper) = ways.split_at_mut(k);
            let (prev, cur) = (&lower[k - 1], &mut upper[0]);
            for s in (r..width).rev() {
                cur[s] += prev[s - r];
            }
        }
    }

    let observed: u64 = ranks[..n1].iter().sum();
    let center = (n1 * (n + 1)) as i64;
    let deviation = (observed as i64 - center).abs();
    let (mut hits, mut total) = (0.0, 0.0);
    for (s, &w) in ways[n1].iter().enumerate() {
        total += w;
        if (s as i64 - center).abs() >= deviation {
            hits += w;
        }
    }
    Ok((hits / total).clamp(f64::MIN_POSITIVE, 1.0))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn midranks_with_ties() {
        assert_eq!(midranks(&[1.0, 2.0, 2.0, 4.0]), vec![1.0, 2.5, 2.5, 4.0]);
        assert_eq!(midranks(&[3.0, 3.0, 3.0]), vec![2.0, 2.0, 2.0]);
        assert_eq!(midranks(&[9.0, -1.0]), vec![2.0, 1.0]);
    }

    #[test]
    fn identical_samples() {
        let a = [1.0, 2.0, 3.0, 4.0];
        assert_eq!(wilcoxon_rank_sum(&a, &a).unwrap(), 1.0);
        let big: Vec<f64> = (0..30).map(f64::from).collect();
        assert!(rank_sum_normal(&big, &big).unwrap() > 0.99);
        assert_eq!(rank_sum_normal(&[2.0; 30], &[2.0; 30]).unwrap(), 1.0);
        assert_eq!(rank_sum_exact(&[2.0; 3], &[2.0; 4]).unwrap(), 1.0);
    }

    #[test]
    fn separated_triples() {
        let p = wilcoxon_rank_sum(&[1.0, 2.0, 3.0], &[4.0, 5.0, 6.0]).unwrap();
        assert!((p - 0.1).abs() < 1e-12, "{p}");
        let approx = rank_sum_normal(&[1.0, 2.0, 3.0], &[4.0, 5.0, 6.0]).unwrap();
        assert!((approx - 0.1).abs() < 0.05, "{approx}");
    }

    #[test]
    fn symmetric_in_arguments() {
        let a = [0.3, 1.7, 2.2, 5.0, 5.0];
        let b = [0.1, 0.2, 5.0, 6.1];
        assert_eq!(wilcoxon_rank_sum(&a, &b).unwrap(), wilcoxon_rank_sum(&b, &a).unwrap());
        assert_eq!(rank_sum_normal(&a, &b).unwrap(), rank_sum_normal(&b, &a).unwrap());
    }

    #[test]
    fn fully_separated_thirty() {
        let a: Vec<f64> = (0..30).map(|i| i as f64 * 1e-30).collect();
        let b: Vec<f64> = (0..30).map(|i| 100.0 + i as f64).collect();
        let p = wilcoxon_rank_sum(&a, &b).unwrap();
        assert!(p > 0.0 && p < 1e-9, "{p}");
    }

    #[test]
    fn too_small() {
        assert_eq!(wilcoxon_rank_sum(&[1.0], &[1.0, 2.0]), Err(Error::SampleTooSmall(1, 2)));
    }
}
