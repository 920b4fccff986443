//! `distsim`: repeated perturbation plus restriction, or the one-step
//! boundary experiment, with histogram and KS summaries.

use std::path::{Path, PathBuf};

use clap::Args;
use genobound_core::distsim::default_bins;
use genobound_core::stats::{ks_test, ks_uniform, KsResult};
use genobound_core::{
    boundary_step, folded_half_normal_cdf, histogram, simulate_distribution, RestrictionStrategy,
    SampleSet, SimConfig,
};
use serde::{Deserialize, Serialize};

use super::parse_strategy;
use crate::error::{CliError, Result};
use crate::manifest::Manifest;
use crate::output::OutputSet;
use crate::svg::histogram_svg;
use crate::traces::fmt_f64;

#[derive(Debug, Clone, PartialEq, Args, Serialize, Deserialize)]
pub struct DistsimArgs {
    /// Number of simulated gene values.
    #[arg(long, default_value_t = 50_000)]
    pub n: usize,
    /// Perturbation-restriction cycles.
    #[arg(long, default_value_t = 100)]
    pub cycles: usize,
    /// Standard deviation of the Gaussian perturbation.
    #[arg(long, default_value_t = 0.1)]
    pub sigma: f64,
    /// Restriction strategies, comma separated.
    #[arg(long, value_delimiter = ',', default_value = "bounce-iter", value_parser = parse_strategy)]
    pub strategy: Vec<RestrictionStrategy>,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Histogram bins (25 for n <= 1000, 100 otherwise).
    #[arg(long)]
    pub bins: Option<usize>,
    /// Mutate n values sitting on the upper bound once instead of cycling
    /// a uniform population.
    #[arg(long)]
    pub boundary_step: bool,
    /// Sweep over these sigmas.
    #[arg(long, value_delimiter = ',')]
    #[serde(default)]
    pub sigma_list: Vec<f64>,
    /// Sweep over these cycle counts.
    #[arg(long, value_delimiter = ',')]
    #[serde(default)]
    pub cycles_list: Vec<usize>,
    /// Output directory.
    #[arg(long)]
    #[serde(skip)]
    pub out: PathBuf,
}

/// One grid point of a run.
#[derive(Debug, Clone, PartialEq)]
pub struct PointSummary {
    pub strategy: RestrictionStrategy,
    pub n: usize,
    /// `None` in boundary-step mode.
    pub cycles: Option<usize>,
    pub sigma: f64,
    pub boundary_mass: f64,
    /// Fraction of values exactly equal to 1.
    pub upper_mass: f64,
    /// `"uniform"` or `"folded-half-normal"`.
    pub ks_reference: &'static str,
    pub ks: KsResult,
    /// Directory holding this point's files, relative to the output root.
    pub dir: String,
}

const SUMMARY_COLUMNS: [&str; 10] = [
    "strategy",
    "n",
    "cycles",
    "sigma",
    "boundary_mass",
    "upper_mass",
    "ks_reference",
    "ks_d",
    "ks_p",
    "dir",
];

impl DistsimArgs {
    fn validate(&self) -> Result<()> {
        if self.strategy.is_empty() {
            return Err(CliError::Usage(
                "--strategy needs at least one value".into(),
            ));
        }
        if self.bins == Some(0) {
            return Err(CliError::Usage("--bins must be >= 1".into()));
        }
        if self.boundary_step && !self.cycles_list.is_empty() {
            return Err(CliError::Usage(
                "--cycles-list has no effect with --boundary-step".into(),
            ));
        }
        Ok(())
    }

    fn sigmas(&self) -> Vec<f64> {
        if self.sigma_list.is_empty() {
            vec![self.sigma]
        } else {
            self.sigma_list.clone()
        }
    }

    fn cycle_counts(&self) -> Vec<Option<usize>> {
        if self.boundary_step {
            vec![None]
        } else if self.cycles_list.is_empty() {
            vec![Some(self.cycles)]
        } else {
            self.cycles_list.iter().copied().map(Some).collect()
        }
    }

    fn is_sweep(&self) -> bool {
        self.strategy.len() > 1 || !self.sigma_list.is_empty() || !self.cycles_list.is_empty()
    }
}

fn point_dir(strategy: RestrictionStrategy, sigma: f64, cycles: Option<usize>) -> String {
    match cycles {
        Some(c) => format!("{strategy}_sigma-{}_cycles-{c}", fmt_f64(sigma)),
        None => format!("{strategy}_sigma-{}_boundary-step", fmt_f64(sigma)),
    }
}

fn samples_csv(values: &[f64]) -> Vec<u8> {
    let mut out = String::with_capacity(values.len() * 20 + 6);
    out.push_str("value\n");
    for &v in values {
        out.push_str(&fmt_f64(v));
        out.push('\n');
    }
    out.into_bytes()
}

fn histogram_csv(bins: &[genobound_core::HistogramBin]) -> Vec<u8> {
    let mut out = String::from("bin_lower,count\n");
    for b in bins {
        out.push_str(&format!("{},{}\n", fmt_f64(b.lower), b.count));
    }
    out.into_bytes()
}

fn summary_csv(points: &[PointSummary]) -> Vec<u8> {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(SUMMARY_COLUMNS).expect("in-memory write");
    for p in points {
        w.write_record([
            p.strategy.name().to_string(),
            p.n.to_string(),
            p.cycles.map(|c| c.to_string()).unwrap_or_default(),
            fmt_f64(p.sigma),
            fmt_f64(p.boundary_mass),
            fmt_f64(p.upper_mass),
            p.ks_reference.to_string(),
            fmt_f64(p.ks.d_statistic),
            fmt_f64(p.ks.p_value),
            p.dir.clone(),
        ])
        .expect("in-memory write");
    }
    w.into_inner().expect("in-memory flush")
}

fn simulate(
    args: &DistsimArgs,
    strategy: RestrictionStrategy,
    sigma: f64,
    cycles: Option<usize>,
    bins: usize,
) -> Result<SampleSet> {
    Ok(match cycles {
        Some(cycles) => simulate_distribution(&SimConfig {
            bins,
            ..SimConfig::new(args.n, cycles, sigma, strategy, args.seed)
        })?,
        None => boundary_step(args.n, sigma, strategy, args.seed)?,
    })
}

/// Run into `set` under `prefix`; the manifest and summary are written too.
pub fn write_into(
    args: &DistsimArgs,
    set: &mut OutputSet,
    prefix: &Path,
) -> Result<Vec<PointSummary>> {
    args.validate()?;
    let bins = args.bins.unwrap_or_else(|| default_bins(args.n));
    let sweep = args.is_sweep();
    let mut points = Vec::new();
    for &strategy in &args.strategy {
        for sigma in args.sigmas() {
            for cycles in args.cycle_counts() {
                let sample = simulate(args, strategy, sigma, cycles, bins)?;
                let values = sample.values();
                let (ks_reference, ks) = if cycles.is_some() {
                    ("uniform", ks_uniform(values)?)
                } else {
                    (
                        "folded-half-normal",
                        ks_test(values, |x| folded_half_normal_cdf(x, 1.0, sigma))?,
                    )
                };
                let dir = if sweep {
                    point_dir(strategy, sigma, cycles)
                } else {
                    String::new()
                };
                let base = prefix.join(&dir);
                let hist = histogram(values, bins)?;
                let title = match cycles {
                    Some(c) => format!("{strategy}, sigma {sigma}, {c} cycles, n {}", args.n),
                    None => format!(
                        "{strategy}, sigma {sigma}, one step from the bound, n {}",
                        args.n
                    ),
                };
                set.write(base.join("samples.csv"), &samples_csv(values))?;
                set.write(base.join("histogram.csv"), &histogram_csv(&hist))?;
                set.write(
                    base.join("histogram.svg"),
                    histogram_svg(&hist, &title).as_bytes(),
                )?;
                let upper_mass =
                    values.iter().filter(|&&v| v == 1.0).count() as f64 / values.len() as f64;
                points.push(PointSummary {
                    strategy,
                    n: args.n,
                    cycles,
                    sigma,
                    boundary_mass: sample.boundary_mass(),
                    upper_mass,
                    ks_reference,
                    ks,
                    dir,
                });
            }
        }
    }
    set.write(prefix.join("summary.csv"), &summary_csv(&points))?;
    let manifest = Manifest::new("distsim", args, Some(args.seed))?;
    set.write(prefix.join("manifest.json"), &manifest.to_json())?;
    Ok(points)
}

pub fn run(args: &DistsimArgs) -> Result<Vec<PointSummary>> {
    let mut set = OutputSet::create(&args.out)?;
    let points = write_into(args, &mut set, Path::new(""))?;
    set.commit();
    Ok(points)
}
