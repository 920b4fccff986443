//! `reproduce`: every distribution and benchmark experiment in one output
//! tree, followed by a pass/fail summary of the headline checks.
//!
//! Layout under `--out`:
//!
//! ```text
//! boundary-step/  one step from the bound, clamped vs bounce-clamped (n = 100000)
//! skew/           100 cycles, clamped vs bounce-iter (n = 50000)
//! cycle-sweep/    10, 50 and 100 cycles (n = 1000)
//! sigma-sweep/    sigma 0.05, 0.1 and 0.3 (n = 1000)
//! bench/<function>-<strategy>/traces.csv
//! analysis/<function>/report.json
//! summary.csv
//! manifest.json
//! ```

use std::path::{Path, PathBuf};

use clap::{Args, ValueEnum};
use genobound_core::stats::{ks_uniform, SignificanceReport};
use genobound_core::{simulate_distribution, Benchmark, EaConfig, RestrictionStrategy, SimConfig};
use serde::{Deserialize, Serialize};

use super::analyze::{self, AnalyzeArgs};
use super::bench::{self, BenchArgs};
use super::distsim::{self, DistsimArgs, PointSummary};
use crate::error::{CliError, Result};
use crate::manifest::Manifest;
use crate::output::OutputSet;
use crate::traces::fmt_f64;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, ValueEnum, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Scale {
    /// 50 repetitions of 2000 generations per benchmark.
    #[default]
    Full,
    /// 10 repetitions of 500 generations.
    Desk,
}

impl Scale {
    pub fn reps(self) -> usize {
        match self {
            Scale::Full => EaConfig::DEFAULT_REPETITIONS,
            Scale::Desk => 10,
        }
    }

    pub fn generations(self) -> usize {
        match self {
            Scale::Full => EaConfig::DEFAULT_GENERATIONS,
            Scale::Desk => 500,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Args, Serialize, Deserialize)]
pub struct ReproduceArgs {
    #[arg(long, value_enum, default_value_t = Scale::Full)]
    pub scale: Scale,
    /// Master seed shared by every step.
    #[arg(long, default_value_t = 1)]
    pub seed: u64,
    /// Output directory.
    #[arg(long)]
    #[serde(skip)]
    pub out: PathBuf,
}

/// One row of `summary.csv`.
#[derive(Debug, Clone, PartialEq)]
pub struct Check {
    pub name: &'static str,
    pub observed: String,
    pub pass: bool,
}

#[derive(Debug, Clone)]
pub struct ReproduceOutcome {
    pub checks: Vec<Check>,
}

const BENCH_STRATEGIES: [RestrictionStrategy; 2] = [
    RestrictionStrategy::Clamped,
    RestrictionStrategy::BounceBackIterative,
];

fn distsim_args(seed: u64) -> DistsimArgs {
    DistsimArgs {
        n: 50_000,
        cycles: 100,
        sigma: 0.1,
        strategy: BENCH_STRATEGIES.to_vec(),
        seed,
        bins: None,
        boundary_step: false,
        sigma_list: Vec::new(),
        cycles_list: Vec::new(),
        out: PathBuf::new(),
    }
}

fn find(
    points: &[PointSummary],
    strategy: RestrictionStrategy,
) -> impl Iterator<Item = &PointSummary> {
    points.iter().filter(move |p| p.strategy == strategy)
}

fn step<T>(what: &str, r: Result<T>) -> Result<T> {
    r.map_err(|e| e.context(what.to_string()))
}

/// Seeds used by the multi-seed checks: `seed, seed + 1, ...`.
pub const CHECK_SEEDS: u64 = 10;

fn ks_p_values(
    n: usize,
    cycles: usize,
    sigma: f64,
    strategy: RestrictionStrategy,
    seed: u64,
) -> Result<Vec<f64>> {
    (0..CHECK_SEEDS)
        .map(|i| {
            let cfg = SimConfig::new(n, cycles, sigma, strategy, seed.wrapping_add(i));
            Ok(ks_uniform(simulate_distribution(&cfg)?.values())?.p_value)
        })
        .collect()
}

fn count(ps: &[f64], keep: impl Fn(f64) -> bool) -> usize {
    ps.iter().filter(|&&p| keep(p)).count()
}

/// At least 9 of the 10 seeds must satisfy `keep`.
fn enough(ps: &[f64], keep: impl Fn(f64) -> bool) -> bool {
    count(ps, keep) * 10 >= ps.len() * 9
}

fn check_skew(seed: u64) -> Result<Check> {
    let clamp = ks_p_values(50_000, 100, 0.1, RestrictionStrategy::Clamped, seed)?;
    let bounce = ks_p_values(
        50_000,
        100,
        0.1,
        RestrictionStrategy::BounceBackIterative,
        seed,
    )?;
    Ok(Check {
        name: "distribution-skew",
        observed: format!(
            "seeds with clamped ks_p<0.005: {}/{CHECK_SEEDS}; with bounce-iter ks_p>0.1: {}/{CHECK_SEEDS}",
            count(&clamp, |p| p < 0.005),
            count(&bounce, |p| p > 0.1)
        ),
        pass: enough(&clamp, |p| p < 0.005) && enough(&bounce, |p| p > 0.1),
    })
}

fn check_boundary_step(points: &[PointSummary]) -> Check {
    let clamp = find(points, RestrictionStrategy::Clamped)
        .next()
        .expect("clamped point");
    let bounce = find(points, RestrictionStrategy::BounceBackClampedDiff)
        .next()
        .expect("bounce point");
    Check {
        name: "boundary-step",
        observed: format!(
            "clamped mass_at_1={} bounce-clamped mass_at_1={} bounce-clamped ks_p={}",
            fmt_f64(clamp.upper_mass),
            fmt_f64(bounce.upper_mass),
            fmt_f64(bounce.ks.p_value)
        ),
        pass: (clamp.upper_mass - 0.5).abs() <= 0.02
            && bounce.upper_mass == 0.0
            && bounce.ks.p_value > 0.01,
    }
}

fn check_cycles(seed: u64) -> Result<Check> {
    let mut parts = Vec::new();
    let mut pass = true;
    for cycles in [10, 50, 100] {
        let bounce = ks_p_values(
            1000,
            cycles,
            0.1,
            RestrictionStrategy::BounceBackIterative,
            seed,
        )?;
        pass &= enough(&bounce, |p| p > 0.05);
        parts.push(format!(
            "bounce-iter@{cycles} uniform {}/{CHECK_SEEDS}",
            count(&bounce, |p| p > 0.05)
        ));
        if cycles >= 50 {
            let clamp = ks_p_values(1000, cycles, 0.1, RestrictionStrategy::Clamped, seed)?;
            pass &= enough(&clamp, |p| p < 0.05);
            parts.push(format!(
                "clamped@{cycles} rejected {}/{CHECK_SEEDS}",
                count(&clamp, |p| p < 0.05)
            ));
        }
    }
    Ok(Check {
        name: "cycles-invariance",
        observed: parts.join("; "),
        pass,
    })
}

fn check_sigma(points: &[PointSummary]) -> Check {
    let clamp: Vec<f64> = find(points, RestrictionStrategy::Clamped)
        .map(|p| p.boundary_mass)
        .collect();
    let bounce: Vec<f64> = find(points, RestrictionStrategy::BounceBackIterative)
        .map(|p| p.boundary_mass)
        .collect();
    let fmt = |xs: &[f64]| xs.iter().map(|&x| fmt_f64(x)).collect::<Vec<_>>().join("/");
    Check {
        name: "sigma-sensitivity",
        observed: format!(
            "clamped mass {} bounce-iter mass {}",
            fmt(&clamp),
            fmt(&bounce)
        ),
        pass: clamp.windows(2).all(|w| w[0] <= w[1]) && bounce.iter().all(|&m| m == 0.0),
    }
}

/// Single master seed; the multi-seed version of this check lives in the
/// acceptance tests.
fn check_divergence(report: &SignificanceReport) -> Check {
    let wrong = report
        .significant()
        .filter(|t| t.mean_b >= t.mean_a)
        .count();
    Check {
        name: "benchmark-divergence",
        observed: format!(
            "schwefel significant intervals={} of {} (bounce-iter worse in {wrong})",
            report.significant_count(),
            report.tests.len()
        ),
        pass: report.significant_count() >= 1 && wrong == 0,
    }
}

fn check_sanity(n: usize) -> Result<Check> {
    let mut parts = Vec::new();
    let mut pass = true;
    for f in Benchmark::ALL {
        let value = f.evaluate(&f.minimizer(n))?;
        let tol = if f == Benchmark::Schwefel { 1e-3 } else { 1e-6 } * n as f64;
        pass &= value.abs() <= tol;
        parts.push(format!("{f}={}", fmt_f64(value)));
    }
    Ok(Check {
        name: "benchmark-sanity",
        observed: parts.join(" "),
        pass,
    })
}

fn summary_csv(checks: &[Check]) -> Vec<u8> {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(["check", "observed", "pass"])
        .expect("in-memory write");
    for c in checks {
        w.write_record([c.name, &c.observed, if c.pass { "true" } else { "false" }])
            .expect("in-memory write");
    }
    w.into_inner().expect("in-memory flush")
}

pub fn write_into(
    args: &ReproduceArgs,
    set: &mut OutputSet,
    prefix: &Path,
) -> Result<ReproduceOutcome> {
    let seed = args.seed;

    let edge = DistsimArgs {
        n: 100_000,
        cycles: 1,
        boundary_step: true,
        strategy: vec![
            RestrictionStrategy::Clamped,
            RestrictionStrategy::BounceBackClampedDiff,
        ],
        ..distsim_args(seed)
    };
    let edge = step(
        "boundary-step",
        distsim::write_into(&edge, set, &prefix.join("boundary-step")),
    )?;
    step(
        "skew",
        distsim::write_into(&distsim_args(seed), set, &prefix.join("skew")),
    )?;
    let cycles = DistsimArgs {
        n: 1000,
        cycles_list: vec![10, 50, 100],
        ..distsim_args(seed)
    };
    step(
        "cycle-sweep",
        distsim::write_into(&cycles, set, &prefix.join("cycle-sweep")),
    )?;
    let sigmas = DistsimArgs {
        n: 1000,
        sigma_list: vec![0.05, 0.1, 0.3],
        ..distsim_args(seed)
    };
    let sigmas = step(
        "sigma-sweep",
        distsim::write_into(&sigmas, set, &prefix.join("sigma-sweep")),
    )?;

    let mut schwefel = None;
    for function in Benchmark::ALL {
        let mut trace_paths = Vec::new();
        for strategy in BENCH_STRATEGIES {
            let dir = prefix.join("bench").join(format!("{function}-{strategy}"));
            let b = BenchArgs {
                function,
                strategy,
                reps: args.scale.reps(),
                generations: args.scale.generations(),
                mu: EaConfig::DEFAULT_MU,
                lambda: EaConfig::DEFAULT_LAMBDA,
                n: EaConfig::DEFAULT_GENOME_LENGTH,
                tournament: EaConfig::DEFAULT_TOURNAMENT,
                pm: EaConfig::DEFAULT_MUTATION_PROB,
                sigma: None,
                seed,
                without_replacement: false,
                out: PathBuf::new(),
            };
            step(
                &format!("bench {function} {strategy}"),
                bench::write_into(&b, set, &dir),
            )?;
            trace_paths.push(set.root().join(&dir).join("traces.csv"));
        }
        let a = AnalyzeArgs {
            a: trace_paths[0].clone(),
            b: trace_paths[1].clone(),
            interval: 10,
            alpha: 0.05,
            pooled: false,
            out: PathBuf::new(),
        };
        let dir = prefix.join("analysis").join(function.name());
        let report = step(
            &format!("analyze {function}"),
            analyze::write_into(&a, set, &dir, "report.json"),
        )?;
        if function == Benchmark::Schwefel {
            schwefel = Some(report);
        }
    }
    let schwefel =
        schwefel.ok_or_else(|| CliError::Internal("schwefel was not analyzed".into()))?;

    let checks = vec![
        check_skew(seed)?,
        check_boundary_step(&edge),
        check_cycles(seed)?,
        check_sigma(&sigmas),
        check_divergence(&schwefel),
        check_sanity(EaConfig::DEFAULT_GENOME_LENGTH)?,
    ];
    set.write(prefix.join("summary.csv"), &summary_csv(&checks))?;
    let manifest = Manifest::new("reproduce", args, Some(seed))?;
    set.write(prefix.join("manifest.json"), &manifest.to_json())?;
    Ok(ReproduceOutcome { checks })
}

pub fn run(args: &ReproduceArgs) -> Result<ReproduceOutcome> {
    let mut set = OutputSet::create(&args.out)?;
    let outcome = write_into(args, &mut set, Path::new(""))?;
    set.commit();
    Ok(outcome)
}
