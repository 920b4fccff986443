//! Long-format trace files: one `run_id,generation,pop_min` row per run and
//! generation, runs in ascending order.

use std::collections::BTreeMap;
use std::path::Path;

use genobound_core::RunTrace;

use crate::error::{CliError, Result};

pub const TRACE_COLUMNS: [&str; 3] = ["run_id", "generation", "pop_min"];

/// Shortest representation that parses back to the same `f64`.
pub fn fmt_f64(x: f64) -> String {
    format!("{x:?}")
}

pub fn write_traces(traces: &[RunTrace]) -> Vec<u8> {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(TRACE_COLUMNS).expect("in-memory write");
    for t in traces {
        let run = t.run_id.to_string();
        for (g, v) in t.records() {
            w.write_record([run.as_str(), &g.to_string(), &fmt_f64(v)])
                .expect("in-memory write");
        }
    }
    w.into_inner().expect("in-memory flush")
}

fn schema_error(path: &Path, msg: String) -> CliError {
    CliError::Usage(format!("{}: {msg}", path.display()))
}

pub fn read_traces(path: &Path) -> Result<Vec<RunTrace>> {
    let bytes = std::fs::read(path).map_err(|e| CliError::io(path, e))?;
    parse_traces(&bytes).map_err(|msg| schema_error(path, msg))
}

pub fn parse_traces(bytes: &[u8]) -> std::result::Result<Vec<RunTrace>, String> {
    let mut r = csv::Reader::from_reader(bytes);
    let headers = r
        .headers()
        .map_err(|e| format!("unreadable header: {e}"))?
        .clone();
    for (i, expected) in TRACE_COLUMNS.iter().enumerate() {
        match headers.get(i) {
            Some(h) if h.trim() == *expected => {}
            Some(h) => {
                return Err(format!("column {} is {h:?}, expected {expected:?}", i + 1));
            }
            None => return Err(format!("missing column {expected:?}")),
        }
    }
    if let Some(extra) = headers.get(TRACE_COLUMNS.len()) {
        return Err(format!("unexpected column {extra:?}"));
    }

    let mut runs: BTreeMap<usize, Vec<f64>> = BTreeMap::new();
    for (line, record) in r.records().enumerate() {
        let row = line + 2;
        let record = record.map_err(|e| format!("row {row}: {e}"))?;
        let field = |i: usize| record.get(i).unwrap_or("").trim();
        let run_id: usize = field(0).parse().map_err(|_| {
            format!(
                "row {row}: column \"run_id\" is not an integer: {:?}",
                field(0)
            )
        })?;
        let generation: usize = field(1).parse().map_err(|_| {
            format!(
                "row {row}: column \"generation\" is not an integer: {:?}",
                field(1)
            )
        })?;
        let pop_min: f64 = field(2)
            .parse()
            .ok()
            .filter(|v: &f64| v.is_finite())
            .ok_or_else(|| {
                format!(
                    "row {row}: column \"pop_min\" is not a finite number: {:?}",
                    field(2)
                )
            })?;
        let trace = runs.entry(run_id).or_default();
        if generation != trace.len() {
            return Err(format!(
                "row {row}: column \"generation\" for run {run_id} is {generation}, expected {}",
                trace.len()
            ));
        }
        trace.push(pop_min);
    }
    if runs.is_empty() {
        return Err("no trace rows".into());
    }
    let expected = runs.values().next().map(Vec::len).unwrap_or(0);
    if let Some((id, t)) = runs.iter().find(|(_, t)| t.len() != expected) {
        return Err(format!(
            "column \"generation\": run {id} has {} generations, run {} has {expected}",
            t.len(),
            runs.keys().next().unwrap()
        ));
    }
    Ok(runs
        .into_iter()
        .map(|(run_id, pop_min)| RunTrace {
            run_id,
            seed: 0,
            fingerprint: String::new(),
            pop_min,
        })
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn trace(run_id: usize, pop_min: Vec<f64>) -> RunTrace {
        RunTrace {
            run_id,
            seed: 0,
            fingerprint: String::new(),
            pop_min,
        }
    }

    #[test]
    fn round_trip_is_exact() {
        let traces = vec![
            trace(0, vec![12.5, 0.1 + 0.2, 1e-300]),
            trace(1, vec![3.0, 2.0, std::f64::consts::PI]),
        ];
        let bytes = write_traces(&traces);
        let text = String::from_utf8(bytes.clone()).unwrap();
        assert!(text.starts_with("run_id,generation,pop_min\n0,0,12.5\n"));
        let back = parse_traces(&bytes).unwrap();
        assert_eq!(back.len(), 2);
        for (a, b) in traces.iter().zip(&back) {
            assert_eq!(a.pop_min, b.pop_min);
        }
    }

    #[test]
    fn schema_errors_name_the_column() {
        let err = parse_traces(b"run,generation,pop_min\n0,0,1\n").unwrap_err();
        assert!(err.contains("\"run\"") && err.contains("run_id"), "{err}");
        let err = parse_traces(b"run_id,generation\n0,0\n").unwrap_err();
        assert!(err.contains("pop_min"), "{err}");
        let err = parse_traces(b"run_id,generation,pop_min\n0,0,abc\n").unwrap_err();
        assert!(err.contains("pop_min"), "{err}");
        let err = parse_traces(b"run_id,generation,pop_min\n0,1,1.0\n").unwrap_err();
        assert!(err.contains("generation"), "{err}");
        let err =
            parse_traces(b"run_id,generation,pop_min\n0,0,1.0\n0,1,1.0\n1,0,2.0\n").unwrap_err();
        assert!(err.contains("generation"), "{err}");
        assert!(parse_traces(b"run_id,generation,pop_min\n").is_err());
    }
}
