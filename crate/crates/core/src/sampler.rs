//! Simulated boson-sampling run: exact output distribution of a Fock input
//! through a compiled matrix, seeded categorical sampling, and frequency
//! estimates.
//!
//! Input photons select matrix rows and measured outcomes select columns, so
//! each outcome probability carries the same permanent as the eigenstate
//! transition it mirrors (outcome ↔ initial arrangement, input ↔ final).

use ndarray::ArrayView2;
use rand::distributions::{Distribution, WeightedIndex};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::fock::{enumerate_occupations, transition_probability, Occupation};

/// Identifier of the seeded generator stored alongside sampled counts.
pub const RNG_ALGORITHM: &str = "chacha8";

/// Exact outcome distribution over all occupations of the input photon number.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct OutcomeDistribution {
    pub input: Occupation,
    /// (outcome, unnormalized probability) in enumeration order.
    pub outcomes: Vec<(Occupation, f64)>,
    /// Total enumerated mass; 1 for unitary matrices, less under truncation.
    pub total_mass: f64,
}

/// Sampled coincidence counts for one seeded run.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct SampleCounts {
    pub seed: u64,
    pub n_samples: u64,
    pub total_mass: f64,
    pub rng: String,
    pub counts: Vec<OutcomeCount>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct OutcomeCount {
    pub occupation: Occupation,
    pub count: u64,
    pub frequency: f64,
}

/// Exact probability of every outcome via sub-matrix permanents. Values are
/// left unnormalized so truncation loss stays visible.
pub fn output_distribution(
    m: &ArrayView2<num_complex::Complex64>,
    input: &Occupation,
) -> Result<OutcomeDistribution> {
    let d = m.nrows();
    if m.ncols() != d {
        return Err(Error::invalid("sampler needs a square matrix"));
    }
    if input.len() != d {
        return Err(Error::invalid("input occupation length must equal the mode count"));
    }
    let n = input.total();
    if n == 0 {
        return Err(Error::invalid("need at least one photon"));
    }
    let outcomes = enumerate_occupations(n, d)?;
    let mut pairs = Vec::with_capacity(outcomes.len());
    let mut total = 0.0;
    for outcome in outcomes {
        // outcome plays the column role, the input state the row role
        let p = transition_probability(m, &outcome, input)?;
        total += p;
        pairs.push((outcome, p));
    }
    Ok(OutcomeDistribution { input: input.clone(), outcomes: pairs, total_mass: total })
}

/// Draw `n_samples` outcomes from the distribution renormalized over its
/// enumerated support. Deterministic for a given seed.
pub fn sample_outcomes(dist: &OutcomeDistribution, n_samples: u64, seed: u64) -> Result<SampleCounts> {
    if n_samples < 1 {
        return Err(Error::invalid("need at least one sample"));
    }
    if dist.outcomes.is_empty() || dist.total_mass <= 0.0 {
        return Err(Error::invalid("cannot sample from an empty distribution"));
    }
    let weights: Vec<f64> = dist.outcomes.iter().map(|(_, p)| *p).collect();
    let index = WeightedIndex::new(&weights)
        .map_err(|e| Error::invalid(format!("invalid sampling weights: {e}")))?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut counts = vec![0u64; dist.outcomes.len()];
    for _ in 0..n_samples {
        counts[index.sample(&mut rng)] += 1;
    }
    Ok(SampleCounts {
        seed,
        n_samples,
        total_mass: dist.total_mass,
        rng: RNG_ALGORITHM.to_string(),
        counts: dist
            .outcomes
            .iter()
            .zip(counts)
            .map(|((occ, _), count)| OutcomeCount {
                occupation: occ.clone(),
                count,
                frequency: count as f64 / n_samples as f64,
            })
            .collect(),
    })
}

/// Observed frequency of one target outcome.
pub fn estimate_probability(counts: &SampleCounts, target: &Occupation) -> Result<f64> {
    let hit = counts
        .counts
        .iter()
        .find(|c| &c.occupation == target)
        .ok_or_else(|| Error::invalid("target outcome is outside the enumerated support"))?;
    Ok(hit.count as f64 / counts.n_samples as f64)
}

/// Total-variation distance between sampled frequencies and the exact
/// distribution renormalized over its support.
pub fn total_variation(dist: &OutcomeDistribution, counts: &SampleCounts) -> f64 {
    0.5 * dist
        .outcomes
        .iter()
        .zip(counts.counts.iter())
        .map(|((_, p), c)| (p / dist.total_mass - c.frequency).abs())
        .sum::<f64>()
}
