//! `replay`: rerun a command from the parameters recorded in its manifest.

use std::path::{Path, PathBuf};

use clap::Args;
use serde::de::DeserializeOwned;
use serde::{Deserialize, Serialize};

use super::{
    analyze::AnalyzeArgs, bench::BenchArgs, distsim::DistsimArgs, reproduce::ReproduceArgs,
};
use crate::error::{CliError, Result};
use crate::manifest::Manifest;

#[derive(Debug, Clone, PartialEq, Args, Serialize, Deserialize)]
pub struct ReplayArgs {
    /// manifest.json written by an earlier run.
    #[arg(long)]
    pub manifest: PathBuf,
    /// Output directory.
    #[arg(long)]
    pub out: PathBuf,
}

fn parameters<T: DeserializeOwned>(m: &Manifest) -> Result<T> {
    serde_json::from_value(m.parameters.clone())
        .map_err(|e| CliError::Usage(format!("manifest parameters for {:?}: {e}", m.command)))
}

pub fn run(args: &ReplayArgs) -> Result<()> {
    let bytes = std::fs::read(&args.manifest).map_err(|e| CliError::io(&args.manifest, e))?;
    let manifest = Manifest::from_json(&bytes)?;
    let base = args.manifest.parent().unwrap_or(Path::new(""));
    match manifest.command.as_str() {
        "distsim" => super::distsim::run(&DistsimArgs {
            out: args.out.clone(),
            ..parameters(&manifest)?
        })
        .map(|_| ()),
        "bench" => super::bench::run(&BenchArgs {
            out: args.out.clone(),
            ..parameters(&manifest)?
        })
        .map(|_| ()),
        "analyze" => {
            let recorded: AnalyzeArgs = parameters(&manifest)?;
            super::analyze::run(&AnalyzeArgs {
                a: base.join(&recorded.a),
                b: base.join(&recorded.b),
                out: args.out.join("report.json"),
                ..recorded
            })
            .map(|_| ())
        }
        "reproduce" => super::reproduce::run(&ReproduceArgs {
            out: args.out.clone(),
            ..parameters(&manifest)?
        })
        .map(|_| ()),
        other => Err(CliError::Usage(format!(
            "manifest names unknown command {other:?}"
        ))),
    }
}
