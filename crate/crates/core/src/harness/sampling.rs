use rand::seq::index::sample;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::model::{Entity, Ontology, Signature};

use super::HarnessError;

#[derive(Clone, Debug, PartialEq)]
pub struct SamplingConfig {
    pub sample_count: usize,
    pub inclusion_probability: f64,
    pub rng_seed: u64,
    /// Draw sizes uniformly from `bin_count` size ranges instead of
    /// including each term independently.
    pub binned: bool,
    pub bin_count: usize,
}

impl Default for SamplingConfig {
    fn default() -> Self {
        SamplingConfig {
            sample_count: 400,
            inclusion_probability: 0.5,
            rng_seed: 0,
            binned: false,
            bin_count: 10,
        }
    }
}

impl SamplingConfig {
    pub fn validate(&self) -> Result<(), HarnessError> {
        if !(self.inclusion_probability > 0.0 && self.inclusion_probability < 1.0) {
            return Err(HarnessError::InvalidConfig(format!(
                "inclusion probability {} is not in (0, 1)",
                self.inclusion_probability
            )));
        }
        if self.sample_count == 0 {
            return Err(HarnessError::InvalidConfig("sample count must be positive".into()));
        }
        if self.binned && self.bin_count == 0 {
            return Err(HarnessError::InvalidConfig("bin count must be positive".into()));
        }
        Ok(())
    }
}

/// Bin `b` of `bins` over the sizes `0..=m`: half-open, the last one closed.
fn bin_range(b: usize, bins: usize, m: usize) -> (usize, usize) {
    let lo = b * m / bins;
    let hi = if b + 1 == bins { m } else { ((b + 1) * m / bins).max(lo + 1) - 1 };
    (lo, hi.max(lo))
}

/// Random seed signatures over the concept and role names of `o`.
///
/// Ontologies with at most 9 terms get every subset of their terms instead.
pub fn sample_signatures(o: &Ontology, cfg: &SamplingConfig) -> Vec<Signature> {
    let terms: Vec<Entity> = o.signature().terms().collect();
    let m = terms.len();
    if m <= 9 {
        return (0..1usize << m)
            .map(|mask| {
                (0..m)
                    .filter(|i| mask & (1 << i) != 0)
                    .map(|i| terms[i].clone())
                    .collect()
            })
            .collect();
    }
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.rng_seed);
    (0..cfg.sample_count)
        .map(|i| {
            if cfg.binned {
                let (lo, hi) = bin_range(i % cfg.bin_count, cfg.bin_count, m);
                let k = rng.gen_range(lo..=hi);
                sample(&mut rng, m, k).into_iter().map(|j| terms[j].clone()).collect()
            } else {
                terms
                    .iter()
                    .filter(|_| rng.gen_bool(cfg.inclusion_probability))
                    .cloned()
                    .collect()
            }
        })
        .collect()
}
