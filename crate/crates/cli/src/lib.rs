//! Command-line front end: runs the distribution simulations and benchmark
//! experiments, compares trace batches statistically, and writes CSV, JSON
//! and SVG outputs with a manifest describing how they were produced.

pub mod commands;
pub mod error;
pub mod manifest;
pub mod output;
pub mod svg;
pub mod traces;

use std::ffi::OsString;

use clap::{Parser, Subcommand};

use crate::commands::{
    analyze::AnalyzeArgs, bench::BenchArgs, distsim::DistsimArgs, replay::ReplayArgs,
    reproduce::ReproduceArgs,
};
pub use crate::error::{CliError, Result, EXIT_INTERNAL, EXIT_IO, EXIT_USAGE};

/// Environment variable capping the worker-thread count (0 = automatic).
pub const THREADS_ENV: &str = "GENOBOUND_THREADS";

#[derive(Debug, Parser)]
#[command(
    name = "genobound",
    version,
    about = "Restriction-strategy experiments for bounded real-valued genomes"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Simulate repeated mutation plus restriction and histogram the result.
    Distsim(DistsimArgs),
    /// Run repeated (mu+lambda) EA runs on a benchmark function.
    Bench(BenchArgs),
    /// Compare two trace files generation by generation.
    Analyze(AnalyzeArgs),
    /// Run every experiment into one tree and summarize the checks.
    Reproduce(ReproduceArgs),
    /// Re-run a command from its manifest.json.
    Replay(ReplayArgs),
}

impl Command {
    pub fn execute(&self) -> Result<()> {
        match self {
            Command::Distsim(a) => commands::distsim::run(a).map(|_| ()),
            Command::Bench(a) => commands::bench::run(a).map(|_| ()),
            Command::Analyze(a) => commands::analyze::run(a).map(|_| ()),
            Command::Reproduce(a) => {
                for c in commands::reproduce::run(a)?.checks {
                    println!(
                        "{} {}: {}",
                        if c.pass { "PASS" } else { "FAIL" },
                        c.name,
                        c.observed
                    );
                }
                Ok(())
            }
            Command::Replay(a) => commands::replay::run(a),
        }
    }
}

fn thread_count() -> Result<usize> {
    match std::env::var(THREADS_ENV) {
        Ok(v) if !v.trim().is_empty() => v.trim().parse().map_err(|_| {
            CliError::Usage(format!(
                "{THREADS_ENV} must be a non-negative integer, got {v:?}"
            ))
        }),
        _ => Ok(0),
    }
}

/// Parse `args` and execute the command, returning the process exit code.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { EXIT_USAGE } else { 0 };
        }
    };
    let result = thread_count().and_then(|threads| {
        let pool = rayon::ThreadPoolBuilder::new()
            .num_threads(threads)
            .build()
            .map_err(|e| CliError::Internal(format!("thread pool: {e}")))?;
        pool.install(|| cli.command.execute())
    });
    match result {
        Ok(()) => 0,
        Err(e) => {
            eprintln!("error: {e}");
            e.exit_code()
        }
    }
}
