//! `bench`: repeated EA runs on one benchmark function.

use std::path::{Path, PathBuf};

use clap::Args;
use genobound_core::{
    run_repetitions, Benchmark, EaConfig, MutationConfig, RestrictionStrategy, RunTrace,
    TournamentSampling,
};
use serde::{Deserialize, Serialize};

use super::{parse_benchmark, parse_strategy};
use crate::error::Result;
use crate::manifest::Manifest;
use crate::output::OutputSet;
use crate::traces::write_traces;

#[derive(Debug, Clone, PartialEq, Args, Serialize, Deserialize)]
pub struct BenchArgs {
    /// griewank, rastrigin, schaffer or schwefel.
    #[arg(long, value_parser = parse_benchmark)]
    pub function: Benchmark,
    #[arg(long, default_value = "bounce-iter", value_parser = parse_strategy)]
    pub strategy: RestrictionStrategy,
    #[arg(long, default_value_t = EaConfig::DEFAULT_REPETITIONS)]
    pub reps: usize,
    #[arg(long, default_value_t = EaConfig::DEFAULT_GENERATIONS)]
    pub generations: usize,
    #[arg(long, default_value_t = EaConfig::DEFAULT_MU)]
    pub mu: usize,
    #[arg(long, default_value_t = EaConfig::DEFAULT_LAMBDA)]
    pub lambda: usize,
    /// Genome length.
    #[arg(long, default_value_t = EaConfig::DEFAULT_GENOME_LENGTH)]
    pub n: usize,
    #[arg(long, default_value_t = EaConfig::DEFAULT_TOURNAMENT)]
    pub tournament: usize,
    /// Per-gene mutation probability.
    #[arg(long, default_value_t = EaConfig::DEFAULT_MUTATION_PROB)]
    pub pm: f64,
    /// Mutation standard deviation in genotype units (default depends on
    /// the function).
    #[arg(long)]
    pub sigma: Option<f64>,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Draw tournament entrants without replacement.
    #[arg(long)]
    #[serde(default)]
    pub without_replacement: bool,
    /// Output directory.
    #[arg(long)]
    #[serde(skip)]
    pub out: PathBuf,
}

impl BenchArgs {
    pub fn config(&self) -> Result<EaConfig> {
        let sigma = self.sigma.unwrap_or_else(|| self.function.default_sigma());
        let cfg = EaConfig {
            mu: self.mu,
            lambda: self.lambda,
            generations: self.generations,
            tournament_size: self.tournament,
            genome_length: self.n,
            tournament_sampling: if self.without_replacement {
                TournamentSampling::WithoutReplacement
            } else {
                TournamentSampling::WithReplacement
            },
            mutation: MutationConfig::new(sigma, self.pm, self.strategy)?,
            benchmark: self.function,
            seed: self.seed,
        };
        cfg.validate()?;
        Ok(cfg)
    }
}

pub fn write_into(args: &BenchArgs, set: &mut OutputSet, prefix: &Path) -> Result<Vec<RunTrace>> {
    let cfg = args.config()?;
    let traces = run_repetitions(&cfg, args.reps)?;
    set.write(prefix.join("traces.csv"), &write_traces(&traces))?;
    let recorded = BenchArgs {
        sigma: Some(cfg.mutation.sigma()),
        ..args.clone()
    };
    let manifest = Manifest::new("bench", &recorded, Some(args.seed))?;
    set.write(prefix.join("manifest.json"), &manifest.to_json())?;
    Ok(traces)
}

pub fn run(args: &BenchArgs) -> Result<Vec<RunTrace>> {
    let mut set = OutputSet::create(&args.out)?;
    let traces = write_into(args, &mut set, Path::new(""))?;
    set.commit();
    Ok(traces)
}
