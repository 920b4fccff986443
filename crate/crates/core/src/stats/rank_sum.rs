//! Two-sided Wilcoxon rank-sum (Mann-Whitney U) test.

use serde::Serialize;

use crate::error::{Error, Result};

/// Pooled sample sizes up to this use the exact permutation distribution.
pub const EXACT_MAX_TOTAL: usize = 12;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum PValueMethod {
    Exact,
    Normal,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct RankSumResult {
    /// U statistic of the first sample.
    pub u_statistic: f64,
    pub p_value: f64,
    pub n1: usize,
    pub n2: usize,
    pub method: PValueMethod,
}

/// 1-based ranks of `values`, ties receiving the mean of their ranks.
pub fn midranks(values: &[f64]) -> Vec<f64> {
    let mut order: Vec<usize> = (0..values.len()).collect();
    order.sort_by(|&a, &b| values[a].total_cmp(&values[b]));
    let mut ranks = vec![0.0; values.len()];
    let mut start = 0;
    while start < order.len() {
        let mut end = start;
        while end + 1 < order.len() && values[order[end + 1]] == values[order[start]] {
            end += 1;
        }
        let rank = (start + end) as f64 / 2.0 + 1.0;
        for &idx in &order[start..=end] {
            ranks[idx] = rank;
        }
        start = end + 1;
    }
    ranks
}

struct Pooled {
    ranks: Vec<f64>,
    n1: usize,
    n2: usize,
    u: f64,
}

fn pool(a: &[f64], b: &[f64]) -> Result<Pooled> {
    if a.is_empty() || b.is_empty() {
        return Err(Error::Empty {
            what: "rank-sum sample",
        });
    }
    if let Some(&bad) = a.iter().chain(b).find(|v| !v.is_finite()) {
        return Err(Error::InvalidConfig(format!(
            "non-finite sample value {bad}"
        )));
    }
    let values: Vec<f64> = a.iter().chain(b).copied().collect();
    let ranks = midranks(&values);
    let n1 = a.len();
    let rank_sum: f64 = ranks[..n1].iter().sum();
    let u = rank_sum - (n1 * (n1 + 1)) as f64 / 2.0;
    Ok(Pooled {
        ranks,
        n1,
        n2: b.len(),
        u,
    })
}

/// Rank-sum test. Uses the exact permutation p-value when
/// `a.len() + b.len() <= EXACT_MAX_TOTAL`, the normal approximation
/// otherwise.
pub fn rank_sum(a: &[f64], b: &[f64]) -> Result<RankSumResult> {
    if a.len() + b.len() <= EXACT_MAX_TOTAL {
        rank_sum_exact(a, b)
    } else {
        rank_sum_normal(a, b)
    }
}

/// Exact two-sided p-value by enumerating every split of the pooled midranks.
///
/// The p-value is the share of splits whose U lies at least as far from
/// `n1 n2 / 2` as the observed U. Limited to `EXACT_MAX_TOTAL` values.
pub fn rank_sum_exact(a: &[f64], b: &[f64]) -> Result<RankSumResult> {
    let pooled = pool(a, b)?;
    let n = pooled.ranks.len();
    if n > EXACT_MAX_TOTAL {
        return Err(Error::InvalidConfig(format!(
            "exact rank-sum limited to {EXACT_MAX_TOTAL} pooled values, got {n}"
        )));
    }
    let centre = (pooled.n1 * pooled.n2) as f64 / 2.0;
    let observed = (pooled.u - centre).abs();
    let offset = (pooled.n1 * (pooled.n1 + 1)) as f64 / 2.0;
    let (mut extreme, mut total) = (0u64, 0u64);
    for mask in 0u32..(1 << n) {
        if mask.count_ones() as usize != pooled.n1 {
            continue;
        }
        let rank_sum: f64 = (0..n)
            .filter(|i| mask & (1 << i) != 0)
            .map(|i| pooled.ranks[i])
            .sum();
        total += 1;
        // Midranks are multiples of 0.5, so U is exact in binary.
        if ((rank_sum - offset) - centre).abs() >= observed {
            extreme += 1;
        }
    }
    Ok(RankSumResult {
        u_statistic: pooled.u,
        p_value: extreme as f64 / total as f64,
        n1: pooled.n1,
        n2: pooled.n2,
        method: PValueMethod::Exact,
    })
}

/// Normal approximation with tie-corrected variance and a 0.5 continuity
/// correction. A zero variance (all values tied) gives `p = 1`.
pub fn rank_sum_normal(a: &[f64], b: &[f64]) -> Result<RankSumResult> {
    let pooled = pool(a, b)?;
    let (n1, n2) = (pooled.n1 as f64, pooled.n2 as f64);
    let n = n1 + n2;

    let mut sorted = pooled.ranks.clone();
    sorted.sort_by(f64::total_cmp);
    let mut tie_term = 0.0;
    for group in sorted.chunk_by(|x, y| x == y) {
        let t = group.len() as f64;
        tie_term += t * t * t - t;
    }
    let variance = if n > 1.0 {
        n1 * n2 / 12.0 * ((n + 1.0) - tie_term / (n * (n - 1.0)))
    } else {
        0.0
    };

    let p_value = if variance <= 0.0 {
        1.0
    } else {
        let z = ((pooled.u - n1 * n2 / 2.0).abs() - 0.5).max(0.0) / variance.sqrt();
        (libm::erfc(z / std::f64::consts::SQRT_2)).min(1.0)
    };
    Ok(RankSumResult {
        u_statistic: pooled.u,
        p_value,
        n1: pooled.n1,
        n2: pooled.n2,
        method: PValueMethod::Normal,
    })
}
