use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SampleSummary {
    pub avg: f64,
    /// Sample standard deviation (`n - 1` denominator), 0 for `n = 1`.
    pub std: f64,
    pub n: usize,
    pub min: f64,
    pub max: f64,
}

pub fn summarize(samples: &[f64]) -> Result<SampleSummary> {
    let (&first, rest) = samples.split_first().ok_or(Error::EmptySample)?;
    let n = samples.len();
    let min = samples.iter().copied().fold(f64::INFINITY, f64::min);
    let max = samples.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    if rest.iter().all(|&v| v == first) {
        return Ok(SampleSummary {
            avg: first,
            std: 0.0,
            n,
            min,
            max,
        });
    }
    let avg = samples.iter().sum::<f64>() / n as f64;
    let ss: f64 = samples.iter().map(|v| (v - avg).powi(2)).sum();
    let std = (ss / (n - 1) as f64).sqrt();
    Ok(SampleSummary { avg, std, n, min, max })
}
