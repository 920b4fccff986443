//! `analyze`: generation-wise rank-sum comparison of two trace files.

use std::path::{Path, PathBuf};

use clap::Args;
use genobound_core::stats::{
    compare_traces, convergence, ConvergencePoint, IntervalMode, SignificanceReport,
};
use serde::{Deserialize, Serialize};

use crate::error::{CliError, Result};
use crate::manifest::Manifest;
use crate::output::{portable, relative_path, OutputSet};
use crate::svg::convergence_svg;
use crate::traces::{fmt_f64, read_traces};

#[derive(Debug, Clone, PartialEq, Args, Serialize, Deserialize)]
pub struct AnalyzeArgs {
    /// First traces.csv.
    #[arg(long)]
    pub a: PathBuf,
    /// Second traces.csv.
    #[arg(long)]
    pub b: PathBuf,
    /// Generations between tests.
    #[arg(long, default_value_t = 10)]
    pub interval: usize,
    /// Family-wise significance level.
    #[arg(long, default_value_t = 0.05)]
    pub alpha: f64,
    /// Pool every run's minima over each interval instead of testing the
    /// first generation of the interval only.
    #[arg(long)]
    #[serde(default)]
    pub pooled: bool,
    /// Report path; convergence.csv, convergence.svg and manifest.json are
    /// written next to it.
    #[arg(long)]
    #[serde(skip)]
    pub out: PathBuf,
}

fn label(path: &Path, fallback: &str) -> String {
    path.parent()
        .and_then(|p| p.file_name())
        .map(|n| n.to_string_lossy().into_owned())
        .unwrap_or_else(|| fallback.to_string())
}

fn convergence_csv(series: &[(&str, &[ConvergencePoint])]) -> Vec<u8> {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(["set", "generation", "mean", "ci_low", "ci_high"])
        .expect("in-memory write");
    for (name, points) in series {
        for p in points.iter() {
            w.write_record([
                name.to_string(),
                p.generation.to_string(),
                fmt_f64(p.mean),
                fmt_f64(p.ci_low),
                fmt_f64(p.ci_high),
            ])
            .expect("in-memory write");
        }
    }
    w.into_inner().expect("in-memory flush")
}

/// Write the report as `prefix/report_name` plus its companions.
pub fn write_into(
    args: &AnalyzeArgs,
    set: &mut OutputSet,
    prefix: &Path,
    report_name: &str,
) -> Result<SignificanceReport> {
    if args.interval == 0 {
        return Err(CliError::Usage("--interval must be >= 1".into()));
    }
    if !(args.alpha > 0.0 && args.alpha < 1.0) {
        return Err(CliError::Usage(format!(
            "--alpha must lie in (0, 1), got {}",
            args.alpha
        )));
    }
    let a = read_traces(&args.a)?;
    let b = read_traces(&args.b)?;
    let mode = if args.pooled {
        IntervalMode::Pooled
    } else {
        IntervalMode::Spacing
    };
    let report = compare_traces(&a, &b, args.interval, args.alpha, mode)?;

    let conv_a = convergence(&a)?;
    let conv_b = convergence(&b)?;
    let series: [(&str, &[ConvergencePoint]); 2] = [("a", &conv_a), ("b", &conv_b)];
    let (label_a, label_b) = (label(&args.a, "a"), label(&args.b, "b"));
    let labelled: [(&str, &[ConvergencePoint]); 2] = [(&label_a, &conv_a), (&label_b, &conv_b)];
    let ticks: Vec<usize> = report.significant().map(|t| t.generation).collect();
    let title = format!("{label_a} vs {label_b}: mean population minimum, 95% CI");

    let mut json = serde_json::to_vec_pretty(&report)
        .map_err(|e| CliError::Internal(format!("serializing report: {e}")))?;
    json.push(b'\n');
    set.write(prefix.join(report_name), &json)?;
    set.write(prefix.join("convergence.csv"), &convergence_csv(&series))?;
    set.write(
        prefix.join("convergence.svg"),
        convergence_svg(&labelled, &ticks, &title).as_bytes(),
    )?;

    let manifest_dir = set.root().join(prefix);
    let recorded = AnalyzeArgs {
        a: PathBuf::from(portable(&relative_path(&args.a, &manifest_dir)?)),
        b: PathBuf::from(portable(&relative_path(&args.b, &manifest_dir)?)),
        ..args.clone()
    };
    let manifest = Manifest::new("analyze", &recorded, None)?;
    set.write(prefix.join("manifest.json"), &manifest.to_json())?;
    Ok(report)
}

pub fn run(args: &AnalyzeArgs) -> Result<SignificanceReport> {
    let name = args
        .out
        .file_name()
        .ok_or_else(|| CliError::Usage(format!("--out {} is not a file path", args.out.display())))?
        .to_string_lossy()
        .into_owned();
    let dir = match args.out.parent() {
        Some(p) if !p.as_os_str().is_empty() => p.to_path_buf(),
        _ => PathBuf::from("."),
    };
    let mut set = OutputSet::create(&dir)?;
    let report = write_into(args, &mut set, Path::new(""), &name)?;
    set.commit();
    Ok(report)
}
