//! Boltzmann-weighted initial ensemble over multi-boson configurations on the
//! truncated level set.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::fock::{enumerate_occupations, Occupation};
use crate::piston::{eigenenergy, PistonParams};

/// Thermal ensemble: every occupation of N bosons over d levels with its
/// normalized Boltzmann probability.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ThermalEnsemble {
    pub configs: Vec<ThermalConfig>,
    pub partition_value: f64,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ThermalConfig {
    pub occupation: Occupation,
    pub prob: f64,
}

/// Total energy of an occupation at box length `lambda`.
pub fn occupation_energy(occ: &Occupation, lambda: f64) -> Result<f64> {
    let mut e = 0.0;
    for (level, &n) in occ.0.iter().enumerate() {
        if n > 0 {
            e += n as f64 * eigenenergy(level + 1, lambda)?;
        }
    }
    Ok(e)
}

/// Partition function over all C(N+d-1, N) occupations of the initial box.
pub fn partition_function(params: &PistonParams, d: usize) -> Result<f64> {
    partition_function_at(params, d, params.lambda0())
}

/// Partition function evaluated at an arbitrary box length; the final-length
/// variant feeds the free-energy diagnostic.
pub fn partition_function_at(params: &PistonParams, d: usize, lambda: f64) -> Result<f64> {
    let occs = enumerate_occupations(params.n_bosons(), d)?;
    let beta = params.beta();
    let mut z = 0.0;
    for occ in &occs {
        z += (-beta * occupation_energy(occ, lambda)?).exp();
    }
    Ok(z)
}

/// Normalized Boltzmann probability of one initial configuration.
pub fn initial_probability(i_occ: &Occupation, params: &PistonParams, d: usize) -> Result<f64> {
    if i_occ.total() != params.n_bosons() {
        return Err(Error::invalid(format!(
            "occupation holds {} bosons, configuration expects {}",
            i_occ.total(),
            params.n_bosons()
        )));
    }
    if i_occ.len() != d {
        return Err(Error::invalid("occupation length must equal the level count"));
    }
    let z = partition_function(params, d)?;
    let w = (-params.beta() * occupation_energy(i_occ, params.lambda0())?).exp();
    Ok(w / z)
}

/// Build the whole ensemble in enumeration order; probabilities sum to 1.
pub fn thermal_ensemble(params: &PistonParams, d: usize) -> Result<ThermalEnsemble> {
    let occs = enumerate_occupations(params.n_bosons(), d)?;
    let beta = params.beta();
    let weights: Vec<f64> = occs
        .iter()
        .map(|occ| occupation_energy(occ, params.lambda0()).map(|e| (-beta * e).exp()))
        .collect::<Result<_>>()?;
    let z: f64 = weights.iter().sum();
    let configs = occs
        .into_iter()
        .zip(weights)
        .map(|(occupation, w)| ThermalConfig { occupation, prob: w / z })
        .collect();
    Ok(ThermalEnsemble { configs, partition_value: z })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn single_level_partition_function() {
        let p = PistonParams::new(1.0, 2.0, 0.4, 0.7, 4).unwrap();
        let z = partition_function(&p, 1).unwrap();
        let expected = (-0.7 * 4.0 * eigenenergy(1, 1.0).unwrap()).exp();
        assert!((z - expected).abs() < 1e-15);
    }

    #[test]
    fn two_level_single_boson_oracle() {
        // direct two-term summation
        let p = PistonParams::new(1.0, 2.0, 0.4, 0.1, 1).unwrap();
        let z = partition_function(&p, 2).unwrap();
        let direct = (-0.1 * eigenenergy(1, 1.0).unwrap()).exp()
            + (-0.1 * eigenenergy(2, 1.0).unwrap()).exp();
        assert!((z - direct).abs() < 1e-15);
        assert!((z - 0.7494).abs() < 1e-4, "z = {z}");
    }

    #[test]
    fn infinite_temperature_counts_configurations() {
        let p = PistonParams::new(1.0, 2.0, 0.4, 0.0, 3).unwrap();
        let z = partition_function(&p, 5).unwrap();
        assert!((z - 35.0).abs() < 1e-12);
        let occs = enumerate_occupations(3, 5).unwrap();
        for occ in occs.iter().step_by(6) {
            let pr = initial_probability(occ, &p, 5).unwrap();
            assert!((pr - 1.0 / 35.0).abs() < 1e-14);
        }
    }

    #[test]
    fn ensemble_normalizes_and_matches_partition_sum() {
        let p = PistonParams::new(1.0, 2.0, 0.4, 0.1, 3).unwrap();
        let ens = thermal_ensemble(&p, 5).unwrap();
        let total: f64 = ens.configs.iter().map(|c| c.prob).sum();
        assert!((total - 1.0).abs() < 1e-12);
        assert!((ens.partition_value - partition_function(&p, 5).unwrap()).abs() < 1e-12);
        for c in &ens.configs {
            assert!(c.prob >= 0.0);
        }
    }

    #[test]
    fn ground_configuration_dominates_and_sharpens_with_beta() {
        let ground = Occupation(vec![3, 0, 0, 0, 0]);
        let mut last = 0.0;
        for beta in [0.05, 0.1, 0.2, 0.4] {
            let p = PistonParams::new(1.0, 2.0, 0.4, beta, 3).unwrap();
            let ens = thermal_ensemble(&p, 5).unwrap();
            let pg = ens
                .configs
                .iter()
                .find(|c| c.occupation == ground)
                .unwrap()
                .prob;
            for c in &ens.configs {
                if c.occupation != ground {
                    assert!(pg > c.prob);
                }
            }
            assert!(pg > last, "ground probability must grow with beta");
            last = pg;
        }
    }

    #[test]
    fn single_level_probability_is_one() {
        let p = PistonParams::new(1.0, 2.0, 0.4, 0.3, 2).unwrap();
        let only = Occupation(vec![2]);
        assert!((initial_probability(&only, &p, 1).unwrap() - 1.0).abs() < 1e-15);
    }

    #[test]
    fn wrong_total_is_rejected() {
        let p = PistonParams::new(1.0, 2.0, 0.4, 0.3, 2).unwrap();
        let bad = Occupation(vec![1, 0, 0]);
        assert!(initial_probability(&bad, &p, 3).is_err());
    }
}
