//! Seeded random streams.
//!
//! Every run owns one [`RunRng`] seeded from a `u64`. The helpers here pin the
//! number of raw draws each primitive consumes so streams stay reproducible
//! across refactors:
//!
//! * [`uniform`] consumes exactly one `u64`.
//! * [`index`] delegates to `rand`'s unbiased range sampling.
//! * [`distinct_pair`] consumes exactly two [`index`] draws.

use rand::{Rng, RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub type RunRng = ChaCha8Rng;

pub fn run_rng(seed: u64) -> RunRng {
    ChaCha8Rng::seed_from_u64(seed)
}

const INV_2_53: f64 = 1.0 / (1u64 << 53) as f64;

/// Uniform draw from `[lo, hi)`; returns `lo` when `lo == hi`.
///
/// Always consumes one `u64`, even for a degenerate interval.
pub fn uniform<R: RngCore + ?Sized>(rng: &mut R, lo: f64, hi: f64) -> f64 {
    debug_assert!(lo <= hi, "uniform: lo {lo} > hi {hi}");
    let unit = (rng.next_u64() >> 11) as f64 * INV_2_53;
    if lo == hi {
        return lo;
    }
    let v = lo + (hi - lo) * unit;
    if v >= hi {
        hi.next_down()
    } else {
        v
    }
}

/// Uniform index in `0..n`.
pub fn index<R: RngCore + ?Sized>(rng: &mut R, n: usize) -> usize {
    debug_assert!(n > 0);
    rng.random_range(0..n)
}

/// Two distinct uniform indices in `0..n`, `n >= 2`.
pub fn distinct_pair<R: RngCore + ?Sized>(rng: &mut R, n: usize) -> (usize, usize) {
    debug_assert!(n >= 2);
    let first = index(rng, n);
    let mut second = index(rng, n - 1);
    if second >= first {
        second += 1;
    }
    (first, second)
}

/// `true` with probability `p` (`p >= 1` always, `p <= 0` never).
pub fn chance<R: RngCore + ?Sized>(rng: &mut R, p: f64) -> bool {
    uniform(rng, 0.0, 1.0) < p
}
