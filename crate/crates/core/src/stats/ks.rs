//! One-sample Kolmogorov-Smirnov test.

use serde::Serialize;

use crate::error::{Error, Result};

/// Smallest sample for which the asymptotic p-value is reported.
pub const KS_MIN_SAMPLE: usize = 8;

const SERIES_EPS: f64 = 1e-10;

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct KsResult {
    pub d_statistic: f64,
    pub p_value: f64,
    pub sample_size: usize,
}

/// Sup distance between the empirical CDF of `sample` and `cdf`.
///
/// Computed over the sorted sample as
/// `max_i max(i/n - F(x_(i)), F(x_(i)) - (i-1)/n)`, which stays exact under
/// ties. No minimum sample size is enforced.
pub fn ks_statistic<F>(sample: &[f64], cdf: F) -> Result<f64>
where
    F: Fn(f64) -> f64,
{
    if sample.is_empty() {
        return Err(Error::Empty { what: "KS sample" });
    }
    if let Some(&bad) = sample.iter().find(|v| !v.is_finite()) {
        return Err(Error::InvalidConfig(format!(
            "non-finite sample value {bad}"
        )));
    }
    let mut sorted = sample.to_vec();
    sorted.sort_by(f64::total_cmp);
    let n = sorted.len() as f64;
    let d = sorted
        .iter()
        .enumerate()
        .map(|(i, &x)| {
            let f = cdf(x);
            let above = (i + 1) as f64 / n - f;
            let below = f - i as f64 / n;
            above.max(below)
        })
        .fold(0.0, f64::max);
    Ok(d)
}

/// Kolmogorov survival function `Q(lambda) = P(K > lambda)`.
///
/// Uses the alternating series `2 sum (-1)^(k-1) exp(-2 k^2 lambda^2)` for
/// `lambda >= 1.18` and the complementary theta-function series below that,
/// where the alternating form converges slowly. Both stop once a term
/// drops under 1e-10.
pub fn kolmogorov_survival(lambda: f64) -> f64 {
    if lambda <= 0.0 {
        return 1.0;
    }
    if lambda < 1.18 {
        // P(K <= lambda) = sqrt(2 pi) / lambda * sum exp(-(2k-1)^2 pi^2 / (8 lambda^2))
        let scale = -std::f64::consts::PI.powi(2) / (8.0 * lambda * lambda);
        let mut cdf = 0.0;
        for k in 1..100 {
            let odd = (2 * k - 1) as f64;
            let term = (scale * odd * odd).exp();
            cdf += term;
            if term < SERIES_EPS {
                break;
            }
        }
        cdf *= (2.0 * std::f64::consts::PI).sqrt() / lambda;
        (1.0 - cdf).clamp(0.0, 1.0)
    } else {
        let mut q = 0.0;
        let mut sign = 1.0;
        for k in 1..100 {
            let kf = k as f64;
            let term = (-2.0 * kf * kf * lambda * lambda).exp();
            q += sign * term;
            if term < SERIES_EPS {
                break;
            }
            sign = -sign;
        }
        (2.0 * q).clamp(0.0, 1.0)
    }
}

/// KS test of `sample` against a continuous `cdf` with the asymptotic
/// p-value `Q(sqrt(n) * D)`.
pub fn ks_test<F>(sample: &[f64], cdf: F) -> Result<KsResult>
where
    F: Fn(f64) -> f64,
{
    if sample.len() < KS_MIN_SAMPLE {
        return Err(Error::TooFew {
            what: "KS test",
            needed: KS_MIN_SAMPLE,
            got: sample.len(),
        });
    }
    let d = ks_statistic(sample, cdf)?;
    let n = sample.len();
    Ok(KsResult {
        d_statistic: d,
        p_value: kolmogorov_survival((n as f64).sqrt() * d),
        sample_size: n,
    })
}

/// KS test against the uniform distribution on `[0, 1]`.
pub fn ks_uniform(sample: &[f64]) -> Result<KsResult> {
    if let Some(&bad) = sample.iter().find(|v| !(0.0..=1.0).contains(*v)) {
        return Err(Error::OutsideUnitInterval { value: bad });
    }
    ks_test(sample, |x| x)
}
