//! Acceptance suite. Prints one `[PASS]`/`[FAIL]` line per criterion and
//! exits non-zero if any criterion fails.
//!
//! Run alone with `cargo test -p genobound-validation --test acceptance`.

use std::collections::BTreeMap;
use std::fs;
use std::path::{Path, PathBuf};
use std::time::Instant;

use genobound_cli::commands::reproduce::{self, ReproduceArgs, Scale};
use genobound_core::stats::{
    compare_traces, ks_statistic, ks_test, ks_uniform, rank_sum_exact, rank_sum_normal,
    IntervalMode,
};
use genobound_core::{
    bounce_back_clamped_diff, bounce_back_iterative, bounce_back_once, boundary_step, clamp,
    folded_half_normal_cdf, restrict, run_repetitions, simulate_distribution, Benchmark, Bounds,
    EaConfig, RestrictionStrategy, RngStream, SimConfig,
};
use genobound_validation::{
    ecdf_sweep_distance, mann_whitney_exact_p, reflect_until_inside, small_sample,
};
use proptest::prelude::*;
use proptest::test_runner::{Config, RngAlgorithm, TestError, TestRng, TestRunner};

use RestrictionStrategy::{BounceBackClampedDiff, BounceBackIterative, Clamped};

struct Outcome {
    pass: bool,
    detail: String,
}

fn outcome(pass: bool, detail: impl Into<String>) -> Outcome {
    Outcome {
        pass,
        detail: detail.into(),
    }
}

/// Master seeds for the multi-seed distribution criteria.
const MASTER_SEEDS: std::ops::RangeInclusive<u64> = 1..=10;

fn at_least_nine_of_ten(hits: usize) -> bool {
    hits >= 9
}

fn ks_p(
    n: usize,
    cycles: usize,
    sigma: f64,
    strategy: RestrictionStrategy,
    seed: u64,
) -> (f64, f64) {
    let sample = simulate_distribution(&SimConfig::new(n, cycles, sigma, strategy, seed)).unwrap();
    (
        ks_uniform(sample.values()).unwrap().p_value,
        sample.boundary_mass(),
    )
}

fn distribution_skew() -> Outcome {
    let (mut clamp_hits, mut bounce_hits) = (0, 0);
    let mut bounce_ps = Vec::new();
    for seed in MASTER_SEEDS {
        if ks_p(50_000, 100, 0.1, Clamped, seed).0 < 0.005 {
            clamp_hits += 1;
        }
        let p = ks_p(50_000, 100, 0.1, BounceBackIterative, seed).0;
        if p > 0.1 {
            bounce_hits += 1;
        }
        bounce_ps.push(format!("{p:.3}"));
    }
    outcome(
        at_least_nine_of_ten(clamp_hits) && at_least_nine_of_ten(bounce_hits),
        format!(
            "clamped p<0.005 in {clamp_hits}/10 seeds, bounce-iter p>0.1 in {bounce_hits}/10 (p = {})",
            bounce_ps.join(", ")
        ),
    )
}

fn boundary_step_shape() -> Outcome {
    let n = 100_000;
    let at_one = |v: &[f64]| v.iter().filter(|&&x| x == 1.0).count() as f64 / v.len() as f64;
    let clamped = boundary_step(n, 0.1, Clamped, 1).unwrap();
    let bounce = boundary_step(n, 0.1, BounceBackClampedDiff, 1).unwrap();
    let clamp_mass = at_one(clamped.values());
    let bounce_mass = at_one(bounce.values());
    let ks = ks_test(bounce.values(), |x| folded_half_normal_cdf(x, 1.0, 0.1)).unwrap();
    outcome(
        (clamp_mass - 0.5).abs() <= 0.02 && bounce_mass == 0.0 && ks.p_value > 0.01,
        format!(
            "clamped mass at 1.0 = {clamp_mass:.4}, bounce-clamped mass at 1.0 = {bounce_mass}, folded half-normal KS p = {:.3}",
            ks.p_value
        ),
    )
}

fn cycles_invariance() -> Outcome {
    let mut pass = true;
    let mut parts = Vec::new();
    for cycles in [10, 50, 100] {
        let bounce_ps: Vec<f64> = MASTER_SEEDS
            .map(|s| ks_p(1000, cycles, 0.1, BounceBackIterative, s).0)
            .collect();
        let uniform = bounce_ps.iter().filter(|&&p| p > 0.05).count();
        pass &= at_least_nine_of_ten(uniform);
        parts.push(format!("bounce-iter@{cycles} uniform {uniform}/10"));
        if cycles >= 50 {
            let rejected = MASTER_SEEDS
                .filter(|&s| ks_p(1000, cycles, 0.1, Clamped, s).0 < 0.05)
                .count();
            pass &= at_least_nine_of_ten(rejected);
            parts.push(format!("clamped@{cycles} rejected {rejected}/10"));
        }
    }
    outcome(pass, parts.join(", "))
}

fn sigma_sensitivity() -> Outcome {
    let sigmas = [0.05, 0.1, 0.3];
    let clamp: Vec<f64> = sigmas
        .iter()
        .map(|&s| ks_p(1000, 100, s, Clamped, 1).1)
        .collect();
    let bounce: Vec<f64> = sigmas
        .iter()
        .map(|&s| ks_p(1000, 100, s, BounceBackIterative, 1).1)
        .collect();
    outcome(
        clamp.windows(2).all(|w| w[0] <= w[1]) && bounce.iter().all(|&m| m == 0.0),
        format!("clamped boundary mass {clamp:?}, bounce-iter boundary mass {bounce:?}"),
    )
}

fn benchmark_divergence() -> Outcome {
    let mut good = 0;
    let mut parts = Vec::new();
    for master in 0..5u64 {
        let seed = master * 1000;
        let clamped = EaConfig::tuned(Benchmark::Schwefel, Clamped, seed);
        let bounce = EaConfig::tuned(Benchmark::Schwefel, BounceBackIterative, seed);
        assert_eq!(clamped.mutation.sigma(), 0.2);
        let a = run_repetitions(&clamped, EaConfig::DEFAULT_REPETITIONS).unwrap();
        let b = run_repetitions(&bounce, EaConfig::DEFAULT_REPETITIONS).unwrap();
        let report = compare_traces(&a, &b, 10, 0.05, IntervalMode::Spacing).unwrap();
        let significant = report.significant_count();
        let wrong_way = report
            .significant()
            .filter(|t| t.mean_b >= t.mean_a)
            .count();
        if significant >= 1 && wrong_way == 0 {
            good += 1;
        }
        parts.push(format!(
            "seed {seed}: {significant} significant, {wrong_way} favouring clamped"
        ));
    }
    outcome(
        good >= 4,
        format!("{good}/5 master seeds ({})", parts.join("; ")),
    )
}

fn benchmark_sanity() -> Outcome {
    let mut pass = true;
    let mut parts = Vec::new();
    for n in [2, 10, 30, 100] {
        for f in Benchmark::ALL {
            let value = f.evaluate(&f.minimizer(n)).unwrap();
            let tol = if f == Benchmark::Schwefel { 1e-3 } else { 1e-6 } * n as f64;
            pass &= value.abs() <= tol;
            if n == 30 {
                parts.push(format!("{f}={value:.2e}"));
            }
        }
    }
    outcome(
        pass,
        format!("N = 2, 10, 30, 100; at N = 30: {}", parts.join(" ")),
    )
}

fn oracle_equivalence() -> Outcome {
    let pairs: Vec<(usize, usize)> = (1..12)
        .flat_map(|n1| (1..=12 - n1).map(move |n2| (n1, n2)))
        .collect();
    let mut rng = RngStream::new(1);
    let mut violations: BTreeMap<(usize, usize), usize> = BTreeMap::new();
    let mut max_gap: f64 = 0.0;
    let mut exact_mismatch = 0;
    for _ in 0..1000 {
        let (n1, n2) = pairs[rng.index(pairs.len())];
        let a = small_sample(&mut rng, n1, false);
        let b = small_sample(&mut rng, n2, false);
        let exact = rank_sum_exact(&a, &b).unwrap();
        if (exact.p_value - mann_whitney_exact_p(n1, n2, exact.u_statistic)).abs() > 1e-12 {
            exact_mismatch += 1;
        }
        let normal = rank_sum_normal(&a, &b).unwrap();
        let gap = (normal.p_value - exact.p_value).abs();
        max_gap = max_gap.max(gap);
        if gap > 0.05 {
            *violations.entry((n1, n2)).or_default() += 1;
        }
    }

    let mut ks_mismatch = 0;
    for i in 0..1000 {
        let len = 1 + rng.index(20);
        let sample = small_sample(&mut rng, len, i % 2 == 1);
        let d = ks_statistic(&sample, |x| x).unwrap();
        if d != ecdf_sweep_distance(&sample, |x| x) {
            ks_mismatch += 1;
        }
    }

    let failing: usize = violations.values().sum();
    let pairs_failing = violations
        .keys()
        .map(|(a, b)| format!("({a},{b})"))
        .collect::<Vec<_>>()
        .join(" ");
    outcome(
        failing == 0 && exact_mismatch == 0 && ks_mismatch == 0,
        format!(
            "rank-sum: {failing}/1000 instances with |normal - exact| > 0.05 (max {max_gap:.3}; size pairs {pairs_failing}); \
             exact vs recurrence mismatches {exact_mismatch}; KS D mismatches {ks_mismatch}/1000"
        ),
    )
}

fn files_under(root: &Path) -> Vec<PathBuf> {
    let mut out = Vec::new();
    let mut stack = vec![root.to_path_buf()];
    while let Some(dir) = stack.pop() {
        for entry in fs::read_dir(&dir).unwrap() {
            let path = entry.unwrap().path();
            if path.is_dir() {
                stack.push(path);
            } else {
                out.push(path.strip_prefix(root).unwrap().to_path_buf());
            }
        }
    }
    out.sort();
    out
}

fn without_timestamp(bytes: &[u8]) -> serde_json::Value {
    let mut v: serde_json::Value = serde_json::from_slice(bytes).unwrap();
    v.as_object_mut().unwrap().remove("timestamp");
    v
}

fn determinism() -> Outcome {
    let tmp = tempfile::tempdir().unwrap();
    let mut roots = Vec::new();
    for threads in [1, 4] {
        let out = tmp.path().join(format!("threads-{threads}"));
        let args = ReproduceArgs {
            scale: Scale::Desk,
            seed: 1,
            out: out.clone(),
        };
        let pool = rayon::ThreadPoolBuilder::new()
            .num_threads(threads)
            .build()
            .unwrap();
        pool.install(|| reproduce::run(&args)).unwrap();
        roots.push(out);
    }
    let (a, b) = (&roots[0], &roots[1]);
    let files = files_under(a);
    if files != files_under(b) {
        return outcome(false, "output file sets differ");
    }
    let mut differing = Vec::new();
    for rel in &files {
        let (x, y) = (
            fs::read(a.join(rel)).unwrap(),
            fs::read(b.join(rel)).unwrap(),
        );
        let same = if rel.file_name().is_some_and(|n| n == "manifest.json") {
            without_timestamp(&x) == without_timestamp(&y)
        } else {
            x == y
        };
        if !same {
            differing.push(rel.display().to_string());
        }
    }
    let data_files = files
        .iter()
        .filter(|p| p.extension().is_some_and(|e| e == "csv" || e == "json"))
        .count();
    outcome(
        differing.is_empty(),
        format!(
            "{} files ({data_files} CSV/JSON) compared across 1 and 4 worker threads, {} differ {:?}",
            files.len(),
            differing.len(),
            differing
        ),
    )
}

const PROPERTY_CASES: u32 = 100_000;

fn runner() -> TestRunner {
    TestRunner::new_with_rng(
        Config {
            cases: PROPERTY_CASES,
            failure_persistence: None,
            ..Config::default()
        },
        TestRng::deterministic_rng(RngAlgorithm::ChaCha),
    )
}

fn bounds() -> impl Strategy<Value = Bounds> {
    (-1e3f64..1e3, 1e-3f64..1e3).prop_map(|(min, width)| Bounds::new(min, min + width).unwrap())
}

fn strategy() -> impl Strategy<Value = RestrictionStrategy> {
    prop_oneof![
        Just(Clamped),
        Just(BounceBackIterative),
        Just(BounceBackClampedDiff)
    ]
}

fn scale_tol(b: Bounds) -> f64 {
    1e-9 * (1.0 + b.max().abs().max(b.min().abs()))
}

fn describe<T: std::fmt::Debug>(e: TestError<T>) -> TestError<String> {
    match e {
        TestError::Abort(r) => TestError::Abort(r),
        TestError::Fail(r, v) => TestError::Fail(r, format!("{v:?}")),
    }
}

fn restriction_properties() -> Outcome {
    let mut results: Vec<(&str, Result<(), TestError<String>>)> = Vec::new();

    results.push((
        "in-bounds",
        runner()
            .run(&(bounds(), -1e6f64..1e6, strategy()), |(b, v, s)| {
                let r = restrict(v, b, s).unwrap();
                prop_assert!(b.contains(r), "{v} -> {r} outside {b}");
                Ok(())
            })
            .map_err(describe),
    ));
    results.push((
        "interior identity",
        runner()
            .run(&(bounds(), 0.0f64..=1.0, strategy()), |(b, t, s)| {
                let v = (b.min() + t * b.width()).clamp(b.min(), b.max());
                prop_assert_eq!(restrict(v, b, s).unwrap(), v);
                Ok(())
            })
            .map_err(describe),
    ));
    results.push((
        "clamp idempotence",
        runner()
            .run(&(bounds(), -1e6f64..1e6), |(b, v)| {
                let once = clamp(v, b).unwrap();
                prop_assert_eq!(clamp(once, b).unwrap(), once);
                Ok(())
            })
            .map_err(describe),
    ));
    results.push((
        "reflection symmetry",
        runner()
            .run(&(bounds(), -1e4f64..1e4), |(b, v)| {
                let tol = scale_tol(b) * (1.0 + v.abs() / b.width());
                let mirrored = b.min() + b.max() - v;
                let r = bounce_back_iterative(v, b).unwrap();
                let rm = bounce_back_iterative(mirrored, b).unwrap();
                prop_assert!(
                    (r - (b.min() + b.max() - rm)).abs() <= tol,
                    "{v}: {r} vs {rm}"
                );
                prop_assert!((r - reflect_until_inside(v, b)).abs() <= tol);
                Ok(())
            })
            .map_err(describe),
    ));
    results.push((
        "three-variant agreement",
        runner()
            .run(&(bounds(), 0.0f64..=1.0, any::<bool>()), |(b, t, upper)| {
                let d = t * b.width();
                let v = if upper { b.max() + d } else { b.min() - d };
                let tol = scale_tol(b);
                let once = bounce_back_once(v, b).unwrap();
                let iter = bounce_back_iterative(v, b).unwrap();
                let diff = bounce_back_clamped_diff(v, b).unwrap();
                prop_assert!((once - iter).abs() <= tol, "once {once} iter {iter}");
                prop_assert!((iter - diff).abs() <= tol, "iter {iter} diff {diff}");
                Ok(())
            })
            .map_err(describe),
    ));

    let failed: Vec<String> = results
        .iter()
        .filter_map(|(name, r)| r.as_ref().err().map(|e| format!("{name}: {e}")))
        .collect();
    outcome(
        failed.is_empty(),
        format!(
            "{} properties x {PROPERTY_CASES} cases, {} with violations{}",
            results.len(),
            failed.len(),
            if failed.is_empty() {
                String::new()
            } else {
                format!(" ({})", failed.join("; "))
            }
        ),
    )
}

type Criterion = (u32, &'static str, fn() -> Outcome);

fn main() {
    let criteria: [Criterion; 9] = [
        (1, "distribution skew", distribution_skew),
        (2, "boundary-step shape", boundary_step_shape),
        (3, "cycles invariance", cycles_invariance),
        (4, "sigma sensitivity", sigma_sensitivity),
        (5, "benchmark divergence", benchmark_divergence),
        (6, "benchmark sanity", benchmark_sanity),
        (7, "oracle equivalence", oracle_equivalence),
        (8, "determinism", determinism),
        (9, "restriction properties", restriction_properties),
    ];
    let mut failed = Vec::new();
    for (id, name, check) in criteria {
        let start = Instant::now();
        let result = check();
        println!(
            "[{}] criterion {id} {name}: {} ({:.1}s)",
            if result.pass { "PASS" } else { "FAIL" },
            result.detail,
            start.elapsed().as_secs_f64()
        );
        if !result.pass {
            failed.push(id);
        }
    }
    if failed.is_empty() {
        println!("acceptance: all 9 criteria passed");
    } else {
        println!(
            "acceptance: {} of 9 criteria failed: {failed:?}",
            failed.len()
        );
        std::process::exit(1);
    }
}
