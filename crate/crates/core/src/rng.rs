//! Seeded random stream shared by every stochastic routine.
//!
//! The stream is ChaCha8 keyed by a 64-bit seed. All derived draws are
//! computed here from raw 64-bit words so the sequence does not depend on
//! the sampling conventions of a particular `rand` release:
//!
//! * uniform: the top 53 bits of a word scaled by 2^-53, giving `[0, 1)`;
//! * Gaussian: the Marsaglia polar transform on pairs of uniforms mapped to
//!   `(-1, 1)`, rejecting pairs outside the unit disc. Both outputs of an
//!   accepted pair are used; the second is cached for the next call. The
//!   logarithm comes from `libm` so results agree across platforms;
//! * index: unbiased rejection sampling on `u64` (independent of `usize`).

use rand::{RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;

const UNIT_SCALE: f64 = 1.0 / (1u64 << 53) as f64;

#[derive(Debug, Clone)]
pub struct RngStream {
    seed: u64,
    inner: ChaCha8Rng,
    spare_normal: Option<f64>,
}

impl RngStream {
    pub fn new(seed: u64) -> Self {
        RngStream {
            seed,
            inner: ChaCha8Rng::seed_from_u64(seed),
            spare_normal: None,
        }
    }

    /// Stream for logical run `index` of a batch seeded with `master_seed`.
    pub fn derived(master_seed: u64, index: u64) -> Self {
        RngStream::new(master_seed.wrapping_add(index))
    }

    pub fn seed(&self) -> u64 {
        self.seed
    }

    #[inline]
    pub fn next_u64(&mut self) -> u64 {
        self.inner.next_u64()
    }

    /// Uniform draw on `[0, 1)`.
    #[inline]
    pub fn uniform(&mut self) -> f64 {
        (self.next_u64() >> 11) as f64 * UNIT_SCALE
    }

    /// `true` with probability `p`; always consumes one uniform draw.
    #[inline]
    pub fn bernoulli(&mut self, p: f64) -> bool {
        self.uniform() < p
    }

    /// Standard normal draw.
    pub fn standard_normal(&mut self) -> f64 {
        if let Some(z) = self.spare_normal.take() {
            return z;
        }
        loop {
            let u = 2.0 * self.uniform() - 1.0;
            let v = 2.0 * self.uniform() - 1.0;
            let s = u * u + v * v;
            if s > 0.0 && s < 1.0 {
                let factor = (-2.0 * libm::log(s) / s).sqrt();
                self.spare_normal = Some(v * factor);
                return u * factor;
            }
        }
    }

    #[inline]
    pub fn normal(&mut self, mean: f64, std_dev: f64) -> f64 {
        mean + std_dev * self.standard_normal()
    }

    /// Uniform index in `0..n`. Panics if `n == 0`.
    pub fn index(&mut self, n: usize) -> usize {
        assert!(n > 0, "index range must be non-empty");
        let n = n as u64;
        // Reject the low partial block so every residue is equally likely.
        let threshold = n.wrapping_neg() % n;
        loop {
            let x = self.next_u64();
            if x >= threshold {
                return (x % n) as usize;
            }
        }
    }
}
