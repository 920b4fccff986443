//! Real-valued genomes on `[0, 1]`, Gaussian mutation and the affine
//! genotype to phenotype mapping.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::restriction::{restrict, Bounds, RestrictionStrategy};
use crate::rng::RngStream;

/// Fixed-length vector of genes, each in `[0, 1]`.
#[derive(Debug, Clone, PartialEq)]
pub struct Genome {
    genes: Vec<f64>,
}

impl Genome {
    pub fn new(genes: Vec<f64>) -> Result<Self> {
        if genes.is_empty() {
            return Err(Error::Empty { what: "genome" });
        }
        if let Some(&bad) = genes.iter().find(|g| !Bounds::UNIT.contains(**g)) {
            return Err(Error::OutsideUnitInterval { value: bad });
        }
        Ok(Genome { genes })
    }

    pub fn genes(&self) -> &[f64] {
        &self.genes
    }

    pub fn len(&self) -> usize {
        self.genes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.genes.is_empty()
    }

    pub fn into_genes(self) -> Vec<f64> {
        self.genes
    }
}

/// Gaussian mutation parameters.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct MutationConfig {
    sigma: f64,
    per_gene_prob: f64,
    strategy: RestrictionStrategy,
}

impl MutationConfig {
    pub fn new(sigma: f64, per_gene_prob: f64, strategy: RestrictionStrategy) -> Result<Self> {
        if !(sigma.is_finite() && sigma > 0.0) {
            return Err(Error::InvalidConfig(format!(
                "mutation sigma must be finite and > 0, got {sigma}"
            )));
        }
        if !(0.0..=1.0).contains(&per_gene_prob) {
            return Err(Error::InvalidConfig(format!(
                "per-gene mutation probability must be in [0, 1], got {per_gene_prob}"
            )));
        }
        Ok(MutationConfig {
            sigma,
            per_gene_prob,
            strategy,
        })
    }

    pub fn sigma(&self) -> f64 {
        self.sigma
    }

    pub fn per_gene_prob(&self) -> f64 {
        self.per_gene_prob
    }

    pub fn strategy(&self) -> RestrictionStrategy {
        self.strategy
    }

    pub fn with_strategy(self, strategy: RestrictionStrategy) -> Self {
        MutationConfig { strategy, ..self }
    }
}

/// Genome of `n` genes drawn i.i.d. uniform on `[0, 1)`.
pub fn random_genome(n: usize, rng: &mut RngStream) -> Result<Genome> {
    if n == 0 {
        return Err(Error::InvalidConfig("genome length must be >= 1".into()));
    }
    Ok(Genome {
        genes: (0..n).map(|_| rng.uniform()).collect(),
    })
}

/// Mutated copy of `g`.
pub fn mutate(g: &Genome, cfg: &MutationConfig, rng: &mut RngStream) -> Result<Genome> {
    let mut genes = g.genes.clone();
    mutate_genes(&mut genes, cfg, rng)?;
    Ok(Genome { genes })
}

/// Mutate genes in place, visiting them in index order.
///
/// Per gene, the Bernoulli selection draw (one uniform) precedes the
/// Gaussian draw. With `per_gene_prob == 1` every gene is selected and no
/// selection draw is consumed; with `per_gene_prob == 0` nothing is drawn.
/// The caller must pass genes already inside `[0, 1]`.
pub(crate) fn mutate_genes(
    genes: &mut [f64],
    cfg: &MutationConfig,
    rng: &mut RngStream,
) -> Result<()> {
    let p = cfg.per_gene_prob;
    if p == 0.0 {
        return Ok(());
    }
    let always = p >= 1.0;
    for gene in genes.iter_mut() {
        if always || rng.bernoulli(p) {
            let perturbed = rng.normal(*gene, cfg.sigma);
            *gene = if Bounds::UNIT.contains(perturbed) {
                perturbed
            } else {
                restrict(perturbed, Bounds::UNIT, cfg.strategy)?
            };
        }
    }
    Ok(())
}

/// Map genes affinely onto `range`: `min + gene * (max - min)`.
///
/// A gene of exactly 1 maps to `max` exactly.
pub fn to_phenotype(g: &Genome, range: Bounds) -> Vec<f64> {
    let mut out = vec![0.0; g.len()];
    phenotype_into(&g.genes, range, &mut out);
    out
}

pub(crate) fn phenotype_into(genes: &[f64], range: Bounds, out: &mut [f64]) {
    let width = range.width();
    for (x, &gene) in out.iter_mut().zip(genes) {
        *x = if gene == 1.0 {
            range.max()
        } else {
            range.min() + gene * width
        };
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use RestrictionStrategy::*;

    #[test]
    fn random_genome_is_contained_and_deterministic() {
        let a = random_genome(5, &mut RngStream::new(42)).unwrap();
        let b = random_genome(5, &mut RngStream::new(42)).unwrap();
        assert_eq!(a.len(), 5);
        assert!(a.genes().iter().all(|g| (0.0..=1.0).contains(g)));
        assert_eq!(a, b);
    }

    #[test]
    fn random_genome_rejects_zero_length() {
        assert!(random_genome(0, &mut RngStream::new(1)).is_err());
    }

    #[test]
    fn random_genome_mean_is_one_half() {
        let g = random_genome(50_000, &mut RngStream::new(7)).unwrap();
        let mean = g.genes().iter().sum::<f64>() / g.len() as f64;
        assert!((0.49..=0.51).contains(&mean), "mean {mean}");
    }

    #[test]
    fn genome_new_validates() {
        assert!(Genome::new(vec![]).is_err());
        assert!(Genome::new(vec![0.2, 1.1]).is_err());
        assert!(Genome::new(vec![f64::NAN]).is_err());
        assert!(Genome::new(vec![0.0, 1.0]).is_ok());
    }

    #[test]
    fn mutation_config_validates() {
        assert!(MutationConfig::new(0.0, 0.5, Clamped).is_err());
        assert!(MutationConfig::new(-1.0, 0.5, Clamped).is_err());
        assert!(MutationConfig::new(f64::NAN, 0.5, Clamped).is_err());
        assert!(MutationConfig::new(0.1, 1.5, Clamped).is_err());
        assert!(MutationConfig::new(0.1, -0.1, Clamped).is_err());
        assert!(MutationConfig::new(0.1, 1.0, Clamped).is_ok());
    }

    #[test]
    fn zero_probability_leaves_genome_untouched() {
        let g = random_genome(100, &mut RngStream::new(1)).unwrap();
        let cfg = MutationConfig::new(0.3, 0.0, Clamped).unwrap();
        assert_eq!(mutate(&g, &cfg, &mut RngStream::new(2)).unwrap(), g);
    }

    #[test]
    fn tiny_sigma_barely_moves_genes() {
        let g = random_genome(100, &mut RngStream::new(1)).unwrap();
        let cfg = MutationConfig::new(1e-12, 1.0, BounceBackIterative).unwrap();
        let m = mutate(&g, &cfg, &mut RngStream::new(2)).unwrap();
        for (a, b) in g.genes().iter().zip(m.genes()) {
            assert!((a - b).abs() < 1e-9);
        }
    }

    #[test]
    fn clamped_mutation_at_the_bound_saturates_about_half() {
        let g = Genome::new(vec![1.0; 50_000]).unwrap();
        let cfg = MutationConfig::new(0.1, 1.0, Clamped).unwrap();
        let m = mutate(&g, &cfg, &mut RngStream::new(11)).unwrap();
        let at_bound = m.genes().iter().filter(|&&x| x == 1.0).count() as f64 / 50_000.0;
        // binomial sd at p = 0.5 is ~0.0022
        assert!(at_bound > 0.0);
        assert!((at_bound - 0.5).abs() < 0.015, "{at_bound}");
    }

    #[test]
    fn bounce_back_mutation_at_the_bound_never_saturates() {
        let g = Genome::new(vec![1.0; 10_000]).unwrap();
        let cfg = MutationConfig::new(0.1, 1.0, BounceBackIterative).unwrap();
        let m = mutate(&g, &cfg, &mut RngStream::new(11)).unwrap();
        assert!(m.genes().iter().all(|&x| x < 1.0 && x > 0.0));
    }

    #[test]
    fn phenotype_examples() {
        let rastrigin = Bounds::symmetric(5.12).unwrap();
        let g = Genome::new(vec![0.0, 0.5, 1.0]).unwrap();
        assert_eq!(to_phenotype(&g, rastrigin), vec![-5.12, 0.0, 5.12]);

        let griewank = Bounds::symmetric(600.0).unwrap();
        let g = Genome::new(vec![0.5; 30]).unwrap();
        assert!(to_phenotype(&g, griewank).iter().all(|&x| x == 0.0));

        let schwefel = Bounds::symmetric(500.0).unwrap();
        let g = Genome::new(vec![1.0]).unwrap();
        assert_eq!(to_phenotype(&g, schwefel), vec![500.0]);
    }

    #[test]
    fn phenotype_hits_endpoints_of_asymmetric_ranges() {
        let range = Bounds::new(-0.3, 0.7).unwrap();
        let g = Genome::new(vec![0.0, 1.0]).unwrap();
        assert_eq!(to_phenotype(&g, range), vec![-0.3, 0.7]);
    }
}
