//! Slow, obviously-correct reference computations used to cross-check the
//! library in the acceptance suite.

use genobound_core::{Bounds, RngStream};

/// Sup distance between the empirical CDF of `sample` and `cdf`, found by
/// evaluating the empirical CDF on both sides of every sample point by
/// direct counting.
pub fn ecdf_sweep_distance(sample: &[f64], cdf: impl Fn(f64) -> f64) -> f64 {
    let n = sample.len() as f64;
    let mut d: f64 = 0.0;
    for &x in sample {
        let at = sample.iter().filter(|&&y| y <= x).count() as f64 / n;
        let before = sample.iter().filter(|&&y| y < x).count() as f64 / n;
        let f = cdf(x);
        d = d.max(at - f).max(f - before);
    }
    d
}

/// Number of orderings of `n1` and `n2` untied values giving each U value
/// of the first sample, `0..=n1 * n2`.
pub fn mann_whitney_counts(n1: usize, n2: usize) -> Vec<u64> {
    // counts(a, b)[u] = counts(a - 1, b)[u - b] + counts(a, b - 1)[u]
    let max = n1 * n2;
    let mut table = vec![vec![Vec::<u64>::new(); n2 + 1]; n1 + 1];
    for a in 0..=n1 {
        for b in 0..=n2 {
            let mut counts = vec![0u64; max + 1];
            if a == 0 || b == 0 {
                counts[0] = 1;
            } else {
                for (u, c) in counts.iter_mut().enumerate() {
                    if u >= b {
                        *c += table[a - 1][b][u - b];
                    }
                    *c += table[a][b - 1][u];
                }
            }
            table[a][b] = counts;
        }
    }
    std::mem::take(&mut table[n1][n2])
}

/// Exact two-sided p-value for an untied sample with statistic `u`.
pub fn mann_whitney_exact_p(n1: usize, n2: usize, u: f64) -> f64 {
    let counts = mann_whitney_counts(n1, n2);
    let centre = (n1 * n2) as f64 / 2.0;
    let observed = (u - centre).abs();
    let total: u64 = counts.iter().sum();
    let extreme: u64 = counts
        .iter()
        .enumerate()
        .filter(|(k, _)| (*k as f64 - centre).abs() >= observed)
        .map(|(_, c)| c)
        .sum();
    extreme as f64 / total as f64
}

/// Apply one reflection at a time until `v` lies in `b`.
pub fn reflect_until_inside(mut v: f64, b: Bounds) -> f64 {
    while !b.contains(v) {
        v = if v > b.max() {
            2.0 * b.max() - v
        } else {
            2.0 * b.min() - v
        };
    }
    v
}

/// `count` uniform draws on `[0, 1)`, optionally rounded to one decimal so
/// that ties occur.
pub fn small_sample(rng: &mut RngStream, count: usize, with_ties: bool) -> Vec<f64> {
    (0..count)
        .map(|_| {
            let x = rng.uniform();
            if with_ties {
                (x * 10.0).floor() / 10.0
            } else {
                x
            }
        })
        .collect()
}
