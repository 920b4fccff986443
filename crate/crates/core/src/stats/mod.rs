//! Nonparametric statistics: KS goodness of fit against a continuous CDF,
//! the Wilcoxon rank-sum test, Holm correction, and per-generation comparison
//! of two batches of EA traces.

mod compare;
mod holm;
mod ks;
mod rank_sum;

pub use compare::{
    compare_traces, convergence, ConvergencePoint, IntervalMode, IntervalTest, SignificanceReport,
};
pub use holm::holm_adjust;
pub use ks::{kolmogorov_survival, ks_statistic, ks_test, ks_uniform, KsResult, KS_MIN_SAMPLE};
pub use rank_sum::{
    midranks, rank_sum, rank_sum_exact, rank_sum_normal, PValueMethod, RankSumResult,
    EXACT_MAX_TOTAL,
};
