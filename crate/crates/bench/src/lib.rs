//! Shared fixtures for the criterion benchmarks.

use genobound_core::RngStream;

/// `n` values spread over `[-0.5, 1.5)`: roughly half of them out of the
/// unit interval.
pub fn straddling_values(n: usize, seed: u64) -> Vec<f64> {
    let mut rng = RngStream::new(seed);
    (0..n).map(|_| rng.uniform() * 2.0 - 0.5).collect()
}

/// `n` uniform values on `[0, 1)`.
pub fn unit_sample(n: usize, seed: u64) -> Vec<f64> {
    let mut rng = RngStream::new(seed);
    (0..n).map(|_| rng.uniform()).collect()
}

/// A point in `[-half_range, half_range)^n`.
pub fn point(n: usize, half_range: f64, seed: u64) -> Vec<f64> {
    let mut rng = RngStream::new(seed);
    (0..n)
        .map(|_| (rng.uniform() * 2.0 - 1.0) * half_range)
        .collect()
}
