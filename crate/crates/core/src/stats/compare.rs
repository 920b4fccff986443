//! Per-generation comparison of two batches of EA traces.

use serde::{Deserialize, Serialize};

use super::holm::holm_adjust;
use super::rank_sum::rank_sum;
use crate::error::{Error, Result};
use crate::evolution::RunTrace;

/// Which population minima make up the samples of one interval test.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum IntervalMode {
    /// One test every `interval` generations on the minima at that
    /// generation.
    #[default]
    Spacing,
    /// One test per block of `interval` generations, pooling every run's
    /// minima over the block.
    Pooled,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct IntervalTest {
    /// First generation of the interval.
    pub generation: usize,
    pub u_statistic: f64,
    pub raw_p: f64,
    pub adjusted_p: f64,
    pub significant: bool,
    pub mean_a: f64,
    pub mean_b: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SignificanceReport {
    pub alpha: f64,
    pub interval: usize,
    pub mode: IntervalMode,
    pub runs_a: usize,
    pub runs_b: usize,
    pub generations: usize,
    pub tests: Vec<IntervalTest>,
}

impl SignificanceReport {
    pub fn significant(&self) -> impl Iterator<Item = &IntervalTest> {
        self.tests.iter().filter(|t| t.significant)
    }

    pub fn significant_count(&self) -> usize {
        self.significant().count()
    }
}

fn common_generations(traces: &[RunTrace], what: &'static str) -> Result<usize> {
    let first = traces.first().ok_or(Error::Empty { what })?.generations();
    for t in traces {
        if t.generations() != first {
            return Err(Error::MismatchedGenerations {
                left: first,
                right: t.generations(),
            });
        }
    }
    if first == 0 {
        return Err(Error::Empty { what: "trace" });
    }
    Ok(first)
}

fn mean(xs: &[f64]) -> f64 {
    xs.iter().sum::<f64>() / xs.len() as f64
}

/// Rank-sum tests between `set_a` and `set_b` every `interval` generations,
/// Holm-adjusted across all tests of the comparison.
pub fn compare_traces(
    set_a: &[RunTrace],
    set_b: &[RunTrace],
    interval: usize,
    alpha: f64,
    mode: IntervalMode,
) -> Result<SignificanceReport> {
    if interval == 0 {
        return Err(Error::InvalidConfig("interval must be >= 1".into()));
    }
    if !(alpha > 0.0 && alpha < 1.0) {
        return Err(Error::InvalidConfig(format!(
            "alpha must be in (0, 1), got {alpha}"
        )));
    }
    let generations = common_generations(set_a, "trace set A")?;
    let other = common_generations(set_b, "trace set B")?;
    if generations != other {
        return Err(Error::MismatchedGenerations {
            left: generations,
            right: other,
        });
    }

    let sample = |set: &[RunTrace], start: usize| -> Vec<f64> {
        let end = match mode {
            IntervalMode::Spacing => start + 1,
            IntervalMode::Pooled => (start + interval).min(generations),
        };
        set.iter()
            .flat_map(|t| t.pop_min[start..end].iter().copied())
            .collect()
    };

    let mut tests = Vec::new();
    for generation in (0..generations).step_by(interval) {
        let a = sample(set_a, generation);
        let b = sample(set_b, generation);
        let r = rank_sum(&a, &b)?;
        tests.push(IntervalTest {
            generation,
            u_statistic: r.u_statistic,
            raw_p: r.p_value,
            adjusted_p: r.p_value,
            significant: false,
            mean_a: mean(&a),
            mean_b: mean(&b),
        });
    }

    let raw: Vec<f64> = tests.iter().map(|t| t.raw_p).collect();
    for (test, adjusted) in tests.iter_mut().zip(holm_adjust(&raw)?) {
        test.adjusted_p = adjusted;
        test.significant = adjusted < alpha;
    }

    Ok(SignificanceReport {
        alpha,
        interval,
        mode,
        runs_a: set_a.len(),
        runs_b: set_b.len(),
        generations,
        tests,
    })
}

/// Mean population minimum with a normal 95% interval.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ConvergencePoint {
    pub generation: usize,
    pub mean: f64,
    pub ci_low: f64,
    pub ci_high: f64,
}

/// Per-generation mean and `mean +/- 1.96 SE` across runs.
pub fn convergence(traces: &[RunTrace]) -> Result<Vec<ConvergencePoint>> {
    let generations = common_generations(traces, "trace set")?;
    let n = traces.len() as f64;
    Ok((0..generations)
        .map(|g| {
            let xs: Vec<f64> = traces.iter().map(|t| t.pop_min[g]).collect();
            let m = mean(&xs);
            let half = if traces.len() > 1 {
                let var = xs.iter().map(|x| (x - m).powi(2)).sum::<f64>() / (n - 1.0);
                1.96 * (var / n).sqrt()
            } else {
                0.0
            };
            ConvergencePoint {
                generation: g,
                mean: m,
                ci_low: m - half,
                ci_high: m + half,
            }
        })
        .collect())
}
