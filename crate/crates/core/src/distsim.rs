//! Repeated Gaussian perturbation plus restriction over a population of gene
//! values, and the one-sided boundary experiment.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::genome::{mutate_genes, random_genome, MutationConfig};
use crate::restriction::{restrict, Bounds, RestrictionStrategy};
use crate::rng::RngStream;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SimConfig {
    pub n: usize,
    pub cycles: usize,
    pub sigma: f64,
    pub strategy: RestrictionStrategy,
    pub seed: u64,
    pub bins: usize,
}

impl SimConfig {
    pub fn new(
        n: usize,
        cycles: usize,
        sigma: f64,
        strategy: RestrictionStrategy,
        seed: u64,
    ) -> Self {
        SimConfig {
            n,
            cycles,
            sigma,
            strategy,
            seed,
            bins: default_bins(n),
        }
    }

    pub fn validate(&self) -> Result<()> {
        if self.n == 0 || self.cycles == 0 || self.bins == 0 {
            return Err(Error::InvalidConfig(
                "n, cycles and bins must all be >= 1".into(),
            ));
        }
        if !(self.sigma.is_finite() && self.sigma > 0.0) {
            return Err(Error::InvalidConfig(format!(
                "sigma must be finite and > 0, got {}",
                self.sigma
            )));
        }
        Ok(())
    }

    pub fn fingerprint(&self) -> String {
        format!(
            "distsim n={} cycles={} sigma={} strategy={} seed={}",
            self.n, self.cycles, self.sigma, self.strategy, self.seed
        )
    }
}

/// Histogram resolution used when none is given.
pub fn default_bins(n: usize) -> usize {
    if n <= 1000 {
        25
    } else {
        100
    }
}

/// Simulated gene values, all in `[0, 1]`.
#[derive(Debug, Clone, PartialEq)]
pub struct SampleSet {
    values: Vec<f64>,
    provenance: String,
}

impl SampleSet {
    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn provenance(&self) -> &str {
        &self.provenance
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    /// Fraction of values exactly at a bound.
    pub fn boundary_mass(&self) -> f64 {
        boundary_mass(&self.values)
    }
}

/// Fraction of `values` bitwise equal to `0.0` or `1.0`.
pub fn boundary_mass(values: &[f64]) -> f64 {
    if values.is_empty() {
        return 0.0;
    }
    let hits = values.iter().filter(|&&v| v == 0.0 || v == 1.0).count();
    hits as f64 / values.len() as f64
}

/// Start from `n` uniform values and run `cycles` rounds in which every
/// value is perturbed by `Normal(value, sigma)` and restricted if it left
/// `[0, 1]`.
pub fn simulate_distribution(cfg: &SimConfig) -> Result<SampleSet> {
    simulate_distribution_observed(cfg, |_, _| {})
}

/// As [`simulate_distribution`], calling `observer(cycle, values)` after
/// every completed cycle (1-based).
pub fn simulate_distribution_observed<F>(cfg: &SimConfig, mut observer: F) -> Result<SampleSet>
where
    F: FnMut(usize, &[f64]),
{
    cfg.validate()?;
    let mut rng = RngStream::new(cfg.seed);
    let mut values = random_genome(cfg.n, &mut rng)?.into_genes();
    let mutation = MutationConfig::new(cfg.sigma, 1.0, cfg.strategy)?;
    for cycle in 1..=cfg.cycles {
        mutate_genes(&mut values, &mutation, &mut rng)?;
        observer(cycle, &values);
    }
    Ok(SampleSet {
        values,
        provenance: cfg.fingerprint(),
    })
}

/// `n` draws of `Normal(1, sigma)` restricted into `[0, 1]`: a value sitting
/// on the upper bound, mutated once.
pub fn boundary_step(
    n: usize,
    sigma: f64,
    strategy: RestrictionStrategy,
    seed: u64,
) -> Result<SampleSet> {
    if n == 0 {
        return Err(Error::InvalidConfig("n must be >= 1".into()));
    }
    if !(sigma.is_finite() && sigma > 0.0) {
        return Err(Error::InvalidConfig(format!(
            "sigma must be finite and > 0, got {sigma}"
        )));
    }
    let mut rng = RngStream::new(seed);
    let values = (0..n)
        .map(|_| {
            let v = rng.normal(1.0, sigma);
            if Bounds::UNIT.contains(v) {
                Ok(v)
            } else {
                restrict(v, Bounds::UNIT, strategy)
            }
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(SampleSet {
        values,
        provenance: format!("boundary-step n={n} sigma={sigma} strategy={strategy} seed={seed}"),
    })
}

/// CDF of `limit - |Z| sigma` with `Z` standard normal: the distribution
/// of a Gaussian centred on an upper bound with the overshoot mirrored
/// below it.
pub fn folded_half_normal_cdf(x: f64, limit: f64, sigma: f64) -> f64 {
    if x >= limit {
        1.0
    } else {
        libm::erfc((limit - x) / (sigma * std::f64::consts::SQRT_2))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct HistogramBin {
    pub lower: f64,
    pub count: usize,
}

/// Equal-width histogram over `[0, 1]`; bins are left-closed and
/// right-open except the last, which is closed.
pub fn histogram(values: &[f64], bins: usize) -> Result<Vec<HistogramBin>> {
    if bins == 0 {
        return Err(Error::InvalidConfig("bins must be >= 1".into()));
    }
    let mut counts = vec![0usize; bins];
    for &v in values {
        if !Bounds::UNIT.contains(v) {
            return Err(Error::OutsideUnitInterval { value: v });
        }
        let idx = ((v * bins as f64) as usize).min(bins - 1);
        counts[idx] += 1;
    }
    Ok(counts
        .into_iter()
        .enumerate()
        .map(|(i, count)| HistogramBin {
            lower: i as f64 / bins as f64,
            count,
        })
        .collect())
}
