//! Two-point-measurement work distribution: thermal weights times multi-boson
//! transition probabilities, accumulated onto merged work values, with the
//! cumulative form and a mesh-noise study.

use ndarray::ArrayView2;
use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::fock::{enumerate_occupations, transition_probability, Occupation};
use crate::interferometer::{compile, perturb, resynthesize};
use crate::piston::{eigenenergy, truncate_to_fidelity, PistonParams};
use crate::thermal::{occupation_energy, partition_function_at, thermal_ensemble};

/// Work support points closer than this merge into one bin.
const BIN_WIDTH: f64 = 1e-6;
/// Initial configurations below this probability are dropped (and reported).
const CONFIG_FLOOR: f64 = 1e-12;

/// Discrete work distribution with its cumulative form.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct WorkDistribution {
    /// (work value, probability), strictly increasing in W.
    pub support: Vec<(f64, f64)>,
    /// Running totals over the support; last entry is the total mass.
    pub cumulative: Vec<f64>,
    /// Probability lost to truncation plus dropped initial configurations.
    pub mass_deficit: f64,
    /// |⟨e^{−βW}⟩ · Z₀/Zτ − 1| over the same level set, a truncation gauge.
    pub jarzynski_deviation: f64,
}

impl WorkDistribution {
    pub fn total_mass(&self) -> f64 {
        self.cumulative.last().copied().unwrap_or(0.0)
    }
}

/// Energy difference of one transition: final occupation energy at the final
/// length minus initial occupation energy at the initial length.
pub fn work_value(i_occ: &Occupation, f_occ: &Occupation, params: &PistonParams) -> Result<f64> {
    if i_occ.total() != f_occ.total() {
        return Err(Error::invalid("boson numbers of the two occupations differ"));
    }
    let mut w = 0.0;
    for (level, &n) in f_occ.0.iter().enumerate() {
        if n > 0 {
            w += n as f64 * eigenenergy(level + 1, params.lambda_tau())?;
        }
    }
    for (level, &n) in i_occ.0.iter().enumerate() {
        if n > 0 {
            w -= n as f64 * eigenenergy(level + 1, params.lambda0())?;
        }
    }
    Ok(w)
}

/// Assemble the distribution for a given transition matrix over the d levels
/// it spans. The thermal ensemble and work values come from `params`.
pub fn work_distribution_for_matrix(
    m: &ArrayView2<Complex64>,
    params: &PistonParams,
) -> Result<WorkDistribution> {
    let d = m.nrows();
    if m.ncols() != d || d == 0 {
        return Err(Error::invalid("work distribution needs a non-empty square matrix"));
    }
    let ensemble = thermal_ensemble(params, d)?;
    let finals = enumerate_occupations(params.n_bosons(), d)?;
    let final_energies: Vec<f64> = finals
        .iter()
        .map(|occ| occupation_energy(occ, params.lambda_tau()))
        .collect::<Result<_>>()?;

    let mut bins: std::collections::BTreeMap<i64, f64> = std::collections::BTreeMap::new();
    let mut total = 0.0;
    let mut jarzynski = 0.0;
    for config in &ensemble.configs {
        if config.prob < CONFIG_FLOOR {
            continue;
        }
        let e_init = occupation_energy(&config.occupation, params.lambda0())?;
        for (f_occ, &e_fin) in finals.iter().zip(final_energies.iter()) {
            let p = config.prob * transition_probability(m, &config.occupation, f_occ)?;
            let w = e_fin - e_init;
            total += p;
            jarzynski += p * (-params.beta() * w).exp();
            *bins.entry((w / BIN_WIDTH).round() as i64).or_insert(0.0) += p;
        }
    }
    let support: Vec<(f64, f64)> = bins.into_iter().map(|(k, p)| (k as f64 * BIN_WIDTH, p)).collect();
    let mut running = 0.0;
    let cumulative = support
        .iter()
        .map(|(_, p)| {
            running += p;
            running
        })
        .collect();
    let z0 = partition_function_at(params, d, params.lambda0())?;
    let zt = partition_function_at(params, d, params.lambda_tau())?;
    Ok(WorkDistribution {
        support,
        cumulative,
        mass_deficit: 1.0 - total,
        jarzynski_deviation: (jarzynski * z0 / zt - 1.0).abs(),
    })
}

/// Full pipeline: truncate the amplitude matrix at the fidelity threshold and
/// assemble the distribution from it.
pub fn work_distribution(params: &PistonParams, threshold: f64) -> Result<WorkDistribution> {
    let matrix = truncate_to_fidelity(params, threshold)?;
    work_distribution_for_matrix(&matrix.view(), params)
}

/// Right-continuous cumulative value at `w`: total probability of work ≤ w.
pub fn cumulative(wd: &WorkDistribution, w: f64) -> f64 {
    match wd.support.partition_point(|&(x, _)| x <= w) {
        0 => 0.0,
        idx => wd.cumulative[idx - 1],
    }
}

/// Mean and standard deviation of the cumulative distribution at one
/// evaluation point, over noise trials.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct NoisePoint {
    pub w: f64,
    pub mean_cdf: f64,
    pub std_cdf: f64,
}

/// Perturb the compiled interferometer `trials` times, rebuild the work
/// distribution from each resynthesized matrix, and report the per-point
/// spread of the cumulative curve. Per-trial seeds derive from the master
/// seed by trial index, so results do not depend on evaluation order.
pub fn noise_study(
    params: &PistonParams,
    threshold: f64,
    epsilon: f64,
    trials: u32,
    eval_points: &[f64],
    seed: u64,
) -> Result<Vec<NoisePoint>> {
    if trials < 2 {
        return Err(Error::invalid("noise study needs at least two trials"));
    }
    if eval_points.is_empty() {
        return Err(Error::invalid("no evaluation points given"));
    }
    let matrix = truncate_to_fidelity(params, threshold)?;
    let program = compile(&matrix.view())?;

    let mut table = vec![vec![0.0f64; eval_points.len()]; trials as usize];
    for (trial, row) in table.iter_mut().enumerate() {
        let trial_seed = seed.wrapping_add(trial as u64);
        let noisy = perturb(&program, epsilon, trial_seed)?;
        let m = resynthesize(&noisy);
        let wd = work_distribution_for_matrix(&m.view(), params)?;
        for (i, &w) in eval_points.iter().enumerate() {
            row[i] = cumulative(&wd, w);
        }
    }
    let n = trials as f64;
    Ok(eval_points
        .iter()
        .enumerate()
        .map(|(i, &w)| {
            let mean = table.iter().map(|row| row[i]).sum::<f64>() / n;
            // identical trials must report exactly zero spread
            let std_cdf = if table.iter().all(|row| row[i] == table[0][i]) {
                0.0
            } else {
                (table.iter().map(|row| (row[i] - mean).powi(2)).sum::<f64>() / n).sqrt()
            };
            NoisePoint { w, mean_cdf: mean, std_cdf }
        })
        .collect())
}
