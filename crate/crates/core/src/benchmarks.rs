//! Minimized benchmark functions and their phenotype ranges.
//!
//! Formulas use 1-based gene indices; the Griewank product divides gene `j`
//! (0-based storage) by `sqrt(j + 1)`.
//!
//! Schaffer is the extended form
//! `sum_{i=1}^{N-1} r_i^0.25 * (sin^2(50 * r_i^0.1) + 1)` with
//! `r_i = x_i^2 + x_{i+1}^2`.

use std::f64::consts::PI;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::restriction::Bounds;

/// Additive constant of the Schwefel function, per dimension.
pub const SCHWEFEL_OFFSET: f64 = 418.9828872724339;

/// Per-gene minimizer of the Schwefel term.
pub const SCHWEFEL_ARGMIN: f64 = 420.968746;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Benchmark {
    Griewank,
    Rastrigin,
    Schaffer,
    Schwefel,
}

impl Benchmark {
    pub const ALL: [Benchmark; 4] = [
        Benchmark::Griewank,
        Benchmark::Rastrigin,
        Benchmark::Schaffer,
        Benchmark::Schwefel,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Benchmark::Griewank => "griewank",
            Benchmark::Rastrigin => "rastrigin",
            Benchmark::Schaffer => "schaffer",
            Benchmark::Schwefel => "schwefel",
        }
    }

    /// Half-width of the symmetric phenotype range.
    pub fn half_range(self) -> f64 {
        match self {
            Benchmark::Griewank => 600.0,
            Benchmark::Rastrigin => 5.12,
            Benchmark::Schaffer => 100.0,
            Benchmark::Schwefel => 500.0,
        }
    }

    pub fn range(self) -> Bounds {
        Bounds::symmetric(self.half_range()).expect("static ranges are valid")
    }

    /// Tuned mutation standard deviation in genotype units.
    pub fn default_sigma(self) -> f64 {
        match self {
            Benchmark::Griewank => 0.005,
            Benchmark::Rastrigin => 0.05,
            Benchmark::Schaffer => 0.05,
            Benchmark::Schwefel => 0.2,
        }
    }

    /// Smallest genome length the function is defined for.
    pub fn min_dimension(self) -> usize {
        match self {
            Benchmark::Schaffer => 2,
            _ => 1,
        }
    }

    /// Global minimizer in phenotype space for dimension `n`.
    pub fn minimizer(self, n: usize) -> Vec<f64> {
        match self {
            Benchmark::Schwefel => vec![SCHWEFEL_ARGMIN; n],
            _ => vec![0.0; n],
        }
    }

    pub fn evaluate(self, x: &[f64]) -> Result<f64> {
        match self {
            Benchmark::Griewank => griewank(x),
            Benchmark::Rastrigin => rastrigin(x),
            Benchmark::Schaffer => schaffer(x),
            Benchmark::Schwefel => schwefel(x),
        }
    }
}

impl fmt::Display for Benchmark {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Benchmark {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Benchmark::ALL
            .into_iter()
            .find(|b| b.name() == s)
            .ok_or_else(|| {
                Error::InvalidConfig(format!(
                    "unknown benchmark {s:?} (valid: griewank, rastrigin, schaffer, schwefel)"
                ))
            })
    }
}

fn non_empty(x: &[f64]) -> Result<()> {
    if x.is_empty() {
        Err(Error::Empty { what: "phenotype" })
    } else {
        Ok(())
    }
}

pub fn griewank(x: &[f64]) -> Result<f64> {
    non_empty(x)?;
    let mut sum = 0.0;
    let mut prod = 1.0;
    for (j, &xi) in x.iter().enumerate() {
        sum += xi * xi;
        prod *= (xi / ((j + 1) as f64).sqrt()).cos();
    }
    Ok(sum / 4000.0 - prod + 1.0)
}

pub fn rastrigin(x: &[f64]) -> Result<f64> {
    non_empty(x)?;
    let n = x.len() as f64;
    Ok(10.0 * n
        + x.iter()
            .map(|&xi| xi * xi - 10.0 * (2.0 * PI * xi).cos())
            .sum::<f64>())
}

pub fn schaffer(x: &[f64]) -> Result<f64> {
    if x.len() < 2 {
        return Err(Error::TooFew {
            what: "schaffer phenotype",
            needed: 2,
            got: x.len(),
        });
    }
    Ok(x.windows(2)
        .map(|w| {
            let r = w[0] * w[0] + w[1] * w[1];
            let s = (50.0 * r.powf(0.1)).sin();
            r.powf(0.25) * (s * s + 1.0)
        })
        .sum())
}

pub fn schwefel(x: &[f64]) -> Result<f64> {
    non_empty(x)?;
    let n = x.len() as f64;
    Ok(SCHWEFEL_OFFSET * n - x.iter().map(|&xi| xi * xi.abs().sqrt().sin()).sum::<f64>())
}
