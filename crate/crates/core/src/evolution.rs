//! Single-objective (mu + lambda) evolutionary algorithm.
//!
//! Each generation produces `lambda` offspring. An offspring copies one
//! tournament-selected parent and mutates it; there is no crossover. The
//! next population is the best `mu` of parents plus offspring. Fitness is
//! minimized and evaluated exactly once per individual.
//!
//! Determinism rules:
//!
//! * tournament ties go to the lowest population index;
//! * survival ties go to incumbents before offspring, then to the lower
//!   index (a stable sort over `parents ++ offspring`);
//! * generation 0 of a trace is the initial population, before variation.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::benchmarks::Benchmark;
use crate::error::{Error, Result};
use crate::genome::{mutate_genes, phenotype_into, random_genome, Genome, MutationConfig};
use crate::restriction::RestrictionStrategy;
use crate::rng::RngStream;

/// How tournament entrants are drawn from the survivor pool.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum TournamentSampling {
    #[default]
    WithReplacement,
    WithoutReplacement,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct EaConfig {
    pub mu: usize,
    pub lambda: usize,
    pub generations: usize,
    pub tournament_size: usize,
    pub genome_length: usize,
    pub tournament_sampling: TournamentSampling,
    pub mutation: MutationConfig,
    pub benchmark: Benchmark,
    pub seed: u64,
}

impl EaConfig {
    pub const DEFAULT_GENERATIONS: usize = 2000;
    pub const DEFAULT_MU: usize = 100;
    pub const DEFAULT_LAMBDA: usize = 100;
    pub const DEFAULT_GENOME_LENGTH: usize = 30;
    pub const DEFAULT_TOURNAMENT: usize = 10;
    pub const DEFAULT_MUTATION_PROB: f64 = 0.05;
    pub const DEFAULT_REPETITIONS: usize = 50;

    /// The tuned parameter set for `benchmark`.
    pub fn tuned(benchmark: Benchmark, strategy: RestrictionStrategy, seed: u64) -> Self {
        let mutation = MutationConfig::new(
            benchmark.default_sigma(),
            Self::DEFAULT_MUTATION_PROB,
            strategy,
        )
        .expect("tuned mutation parameters are valid");
        EaConfig {
            mu: Self::DEFAULT_MU,
            lambda: Self::DEFAULT_LAMBDA,
            generations: Self::DEFAULT_GENERATIONS,
            tournament_size: Self::DEFAULT_TOURNAMENT,
            genome_length: Self::DEFAULT_GENOME_LENGTH,
            tournament_sampling: TournamentSampling::WithReplacement,
            mutation,
            benchmark,
            seed,
        }
    }

    pub fn validate(&self) -> Result<()> {
        let positive = [
            ("mu", self.mu),
            ("lambda", self.lambda),
            ("generations", self.generations),
            ("tournament size", self.tournament_size),
            ("genome length", self.genome_length),
        ];
        for (name, value) in positive {
            if value == 0 {
                return Err(Error::InvalidConfig(format!("{name} must be >= 1")));
            }
        }
        if self.tournament_size > self.mu {
            return Err(Error::InvalidConfig(format!(
                "tournament size {} exceeds mu {}",
                self.tournament_size, self.mu
            )));
        }
        if self.genome_length < self.benchmark.min_dimension() {
            return Err(Error::InvalidConfig(format!(
                "{} needs a genome length of at least {}",
                self.benchmark,
                self.benchmark.min_dimension()
            )));
        }
        Ok(())
    }

    /// Short hash of every parameter except the seed, shared by all runs of
    /// a batch.
    pub fn fingerprint(&self) -> String {
        let mut unseeded = self.clone();
        unseeded.seed = 0;
        let canonical = serde_json::to_vec(&unseeded).expect("config serializes");
        let digest = Sha256::digest(&canonical);
        digest[..8].iter().map(|b| format!("{b:02x}")).collect()
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Individual {
    pub genome: Genome,
    pub fitness: f64,
}

/// Population minimum per generation for one seeded run.
#[derive(Debug, Clone, PartialEq)]
pub struct RunTrace {
    pub run_id: usize,
    pub seed: u64,
    pub fingerprint: String,
    /// `pop_min[g]` is the best fitness present after generation `g`.
    pub pop_min: Vec<f64>,
}

impl RunTrace {
    pub fn generations(&self) -> usize {
        self.pop_min.len()
    }

    pub fn final_min(&self) -> f64 {
        *self.pop_min.last().expect("traces are non-empty")
    }

    /// `(generation, population minimum)` records.
    pub fn records(&self) -> impl Iterator<Item = (usize, f64)> + '_ {
        self.pop_min.iter().copied().enumerate()
    }
}

/// Index of the tournament winner among `population`.
pub fn tournament_select(
    population: &[Individual],
    size: usize,
    sampling: TournamentSampling,
    rng: &mut RngStream,
) -> usize {
    debug_assert!(size >= 1 && size <= population.len());
    let better = |a: usize, b: usize| -> usize {
        match population[a].fitness.total_cmp(&population[b].fitness) {
            std::cmp::Ordering::Less => a,
            std::cmp::Ordering::Greater => b,
            std::cmp::Ordering::Equal => a.min(b),
        }
    };
    match sampling {
        TournamentSampling::WithReplacement => {
            let mut best = rng.index(population.len());
            for _ in 1..size {
                best = better(best, rng.index(population.len()));
            }
            best
        }
        TournamentSampling::WithoutReplacement => {
            // Partial Fisher-Yates over the index set.
            let mut pool: Vec<usize> = (0..population.len()).collect();
            let mut best = usize::MAX;
            for k in 0..size {
                let pick = k + rng.index(pool.len() - k);
                pool.swap(k, pick);
                best = if best == usize::MAX {
                    pool[k]
                } else {
                    better(best, pool[k])
                };
            }
            best
        }
    }
}

struct Evaluator {
    benchmark: Benchmark,
    phenotype: Vec<f64>,
}

impl Evaluator {
    fn new(cfg: &EaConfig) -> Self {
        Evaluator {
            benchmark: cfg.benchmark,
            phenotype: vec![0.0; cfg.genome_length],
        }
    }

    fn fitness(&mut self, genome: &Genome) -> Result<f64> {
        phenotype_into(genome.genes(), self.benchmark.range(), &mut self.phenotype);
        let f = self.benchmark.evaluate(&self.phenotype)?;
        if f.is_nan() {
            return Err(Error::NonFinite(f));
        }
        Ok(f)
    }
}

fn population_min(population: &[Individual]) -> f64 {
    population
        .iter()
        .map(|ind| ind.fitness)
        .min_by(f64::total_cmp)
        .expect("population is non-empty")
}

/// Run one EA with `cfg.seed`, reporting the trace as run 0.
pub fn run_ea(cfg: &EaConfig) -> Result<RunTrace> {
    run_ea_observed(cfg, 0, |_, _| {})
}

/// Run one EA, calling `observer(generation, population)` after the initial
/// population and after every survival step.
pub fn run_ea_observed<F>(cfg: &EaConfig, run_id: usize, mut observer: F) -> Result<RunTrace>
where
    F: FnMut(usize, &[Individual]),
{
    cfg.validate()?;
    let mut rng = RngStream::new(cfg.seed);
    let mut eval = Evaluator::new(cfg);

    let mut population = Vec::with_capacity(cfg.mu + cfg.lambda);
    for _ in 0..cfg.mu {
        let genome = random_genome(cfg.genome_length, &mut rng)?;
        let fitness = eval.fitness(&genome)?;
        population.push(Individual { genome, fitness });
    }

    let mut pop_min = Vec::with_capacity(cfg.generations);
    pop_min.push(population_min(&population));
    observer(0, &population);

    let mut offspring = Vec::with_capacity(cfg.lambda);
    for generation in 1..cfg.generations {
        for _ in 0..cfg.lambda {
            let parent = tournament_select(
                &population,
                cfg.tournament_size,
                cfg.tournament_sampling,
                &mut rng,
            );
            let mut genes = population[parent].genome.genes().to_vec();
            mutate_genes(&mut genes, &cfg.mutation, &mut rng)?;
            let genome = Genome::new(genes)?;
            let fitness = eval.fitness(&genome)?;
            offspring.push(Individual { genome, fitness });
        }

        population.append(&mut offspring);
        // Stable: equal fitness keeps incumbents ahead of offspring.
        population.sort_by(|a, b| a.fitness.total_cmp(&b.fitness));
        population.truncate(cfg.mu);

        pop_min.push(population[0].fitness);
        observer(generation, &population);
    }

    Ok(RunTrace {
        run_id,
        seed: cfg.seed,
        fingerprint: cfg.fingerprint(),
        pop_min,
    })
}

/// `reps` independent runs; run `i` uses seed `cfg.seed + i` (wrapping).
///
/// Runs execute on the current rayon pool. Output order follows the run
/// index and does not depend on the number of worker threads.
pub fn run_repetitions(cfg: &EaConfig, reps: usize) -> Result<Vec<RunTrace>> {
    if reps == 0 {
        return Err(Error::InvalidConfig("repetitions must be >= 1".into()));
    }
    cfg.validate()?;
    (0..reps)
        .into_par_iter()
        .map(|i| {
            let run_cfg = EaConfig {
                seed: RngStream::derived(cfg.seed, i as u64).seed(),
                ..cfg.clone()
            };
            run_ea_observed(&run_cfg, i, |_, _| {})
        })
        .collect()
}
