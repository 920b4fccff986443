//! Bounded real-valued genomes for evolutionary algorithms.
//!
//! The crate contains the restriction operators that keep mutated genes
//! inside their interval (clamping and two bounce-back variants), a Gaussian
//! mutation operator over `[0, 1]` genomes, four minimized benchmark
//! functions, a (mu + lambda) EA producing per-generation traces, a
//! simulator showing how each restriction shapes the distribution of gene
//! values, and the nonparametric statistics used to compare the outcomes.
//!
//! ```
//! use genobound_core::{restrict, Bounds, RestrictionStrategy};
//!
//! let b = Bounds::UNIT;
//! assert_eq!(restrict(1.5, b, RestrictionStrategy::Clamped).unwrap(), 1.0);
//! let reflected = restrict(1.2, b, RestrictionStrategy::BounceBackIterative).unwrap();
//! assert!((reflected - 0.8).abs() < 1e-12);
//! ```

pub mod benchmarks;
pub mod distsim;
mod error;
pub mod evolution;
pub mod genome;
pub mod restriction;
pub mod rng;
pub mod stats;

pub use benchmarks::Benchmark;
pub use distsim::{
    boundary_mass, boundary_step, folded_half_normal_cdf, histogram, simulate_distribution,
    HistogramBin, SampleSet, SimConfig,
};
pub use error::{Error, Result};
pub use evolution::{run_ea, run_repetitions, EaConfig, Individual, RunTrace, TournamentSampling};
pub use genome::{mutate, random_genome, to_phenotype, Genome, MutationConfig};
pub use restriction::{
    bounce_back_clamped_diff, bounce_back_iterative, bounce_back_once, clamp, restrict, Bounds,
    RestrictionStrategy,
};
pub use rng::RngStream;
