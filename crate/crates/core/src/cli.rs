//! File-based pipeline commands behind the `pistonwork` binary.
//!
//! One JSON config drives everything; flags override individual fields. All
//! defaults reproduce the worked three-boson example (λ₀ = 1, λτ = 2,
//! v = 0.4, β = 0.1). Outputs carry no timestamps, so re-running a command
//! overwrites byte-identical files.

use serde::{Deserialize, Serialize};
use std::fs;
use std::path::{Path, PathBuf};

use crate::error::{Error, Result};
use crate::fock::Occupation;
use crate::interferometer::{compile, resynthesize, InterferometerProgram};
use crate::linalg::{max_abs_diff, unitarity_defect};
use crate::piston::{sweep_dimension, truncate_to_fidelity, AmplitudeMatrix, PistonParams};
use crate::sampler::{output_distribution, sample_outcomes, total_variation};
use crate::workdist::{noise_study, work_distribution};

pub const DEFAULT_EVAL_POINTS: [f64; 7] = [-48.0, -42.0, -36.0, -27.0, -16.0, -8.0, 4.0];
pub const DEFAULT_V_GRID: (f64, f64, usize) = (0.2, 1.2, 6);
pub const DEFAULT_LAMBDA_GRID: (f64, f64, usize) = (1.25, 2.5, 6);

/// Which parameter a sweep varies.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SweepVariable {
    Speed,
    FinalLength,
}

impl std::str::FromStr for SweepVariable {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "v" => Ok(SweepVariable::Speed),
            "lambda_tau" => Ok(SweepVariable::FinalLength),
            other => Err(Error::invalid(format!(
                "unknown sweep variable '{other}' (expected 'v' or 'lambda_tau')"
            ))),
        }
    }
}

/// One experiment configuration. Units are M = ħ = k_B = 1.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(default)]
pub struct RunConfig {
    pub lambda0: f64,
    pub lambda_tau: f64,
    pub v: f64,
    pub beta: f64,
    pub n_bosons: u32,
    pub fidelity_threshold: f64,
    pub seed: u64,
    pub n_samples: u64,
    pub epsilon: f64,
    pub trials: u32,
    pub eval_points: Vec<f64>,
    pub output_dir: PathBuf,
}

impl Default for RunConfig {
    fn default() -> Self {
        RunConfig {
            lambda0: 1.0,
            lambda_tau: 2.0,
            v: 0.4,
            beta: 0.1,
            n_bosons: 3,
            fidelity_threshold: 0.995,
            seed: 1,
            n_samples: 100_000,
            epsilon: 0.01,
            trials: 100,
            eval_points: DEFAULT_EVAL_POINTS.to_vec(),
            output_dir: PathBuf::from("out"),
        }
    }
}

impl RunConfig {
    pub fn load(path: &Path) -> Result<Self> {
        let text = fs::read_to_string(path)?;
        Ok(serde_json::from_str(&text)?)
    }

    pub fn params(&self) -> Result<PistonParams> {
        PistonParams::new(self.lambda0, self.lambda_tau, self.v, self.beta, self.n_bosons)
    }

    fn ensure_output_dir(&self) -> Result<()> {
        fs::create_dir_all(&self.output_dir)?;
        Ok(())
    }
}

/// Build the truncated amplitude matrix and write it as JSON.
pub fn cmd_amplitudes(config: &RunConfig) -> Result<PathBuf> {
    let params = config.params()?;
    let matrix = truncate_to_fidelity(&params, config.fidelity_threshold)?;
    config.ensure_output_dir()?;
    let path = config.output_dir.join("amplitudes.json");
    fs::write(&path, serde_json::to_string_pretty(&matrix)?)?;
    println!("dim={} fidelity={:.6} j_max={}", matrix.dim, matrix.fidelity, matrix.j_max);
    Ok(path)
}

/// Read an amplitude matrix, compile it into a mesh program, and write the
/// program as JSON. Fails with a numerical error if resynthesis drifts.
pub fn cmd_decompose(config: &RunConfig, matrix_path: &Path) -> Result<PathBuf> {
    let text = fs::read_to_string(matrix_path)?;
    let matrix: AmplitudeMatrix = serde_json::from_str(&text)?;
    let program = compile(&matrix.view())?;
    let resynth = resynthesize(&program);
    let unitary_drift = unitarity_defect(&resynth);
    let raw_distance = max_abs_diff(&resynth, &matrix.entries);
    if unitary_drift > 1e-8 {
        return Err(Error::numerical(format!(
            "resynthesized program drifted from unitarity by {unitary_drift:.3e}"
        )));
    }
    config.ensure_output_dir()?;
    let path = config.output_dir.join("program.json");
    fs::write(&path, serde_json::to_string_pretty(&program)?)?;
    println!(
        "gates={} projection_residual={:.6e} distance_to_input={:.6e}",
        program.gates.len(),
        program.projection_residual,
        raw_distance
    );
    Ok(path)
}

/// Run the full work-distribution pipeline and write `W,prob,cdf` rows.
pub fn cmd_workdist(config: &RunConfig) -> Result<PathBuf> {
    let params = config.params()?;
    let wd = work_distribution(&params, config.fidelity_threshold)?;
    config.ensure_output_dir()?;
    let path = config.output_dir.join("workdist.csv");
    let mut text = String::from("W,prob,cdf\n");
    for ((w, p), c) in wd.support.iter().zip(wd.cumulative.iter()) {
        text.push_str(&format!("{w},{p},{c}\n"));
    }
    fs::write(&path, text)?;
    println!(
        "support_points={} total_mass={:.9} mass_deficit={:.3e} jarzynski_deviation={:.3e}",
        wd.support.len(),
        wd.total_mass(),
        wd.mass_deficit,
        wd.jarzynski_deviation
    );
    Ok(path)
}

/// Truncation dimension across a parameter grid; writes `value,dim` rows.
pub fn cmd_sweep(config: &RunConfig, variable: SweepVariable, grid: &[f64]) -> Result<PathBuf> {
    if grid.is_empty() {
        return Err(Error::invalid("sweep grid is empty"));
    }
    let mut rows = Vec::with_capacity(grid.len());
    for &value in grid {
        let params = match variable {
            SweepVariable::Speed => {
                PistonParams::new(config.lambda0, config.lambda_tau, value, config.beta, config.n_bosons)?
            }
            SweepVariable::FinalLength => {
                PistonParams::new(config.lambda0, value, config.v, config.beta, config.n_bosons)?
            }
        };
        let dim = sweep_dimension(&params, config.fidelity_threshold)?;
        rows.push((value, dim));
    }
    config.ensure_output_dir()?;
    let path = config.output_dir.join("sweep.csv");
    let mut text = String::from("value,dim\n");
    for (value, dim) in &rows {
        text.push_str(&format!("{value},{dim}\n"));
    }
    fs::write(&path, text)?;
    for (value, dim) in &rows {
        println!("value={value} dim={dim}");
    }
    Ok(path)
}

/// Simulate a sampling run through a compiled program: exact distribution,
/// seeded counts, and the total-variation gap between them.
pub fn cmd_sample(config: &RunConfig, program_path: &Path) -> Result<PathBuf> {
    let text = fs::read_to_string(program_path)?;
    let program: InterferometerProgram = serde_json::from_str(&text)?;
    let matrix = resynthesize(&program);
    let input = Occupation::concentrated(config.n_bosons, 0, program.dim);
    let dist = output_distribution(&matrix.view(), &input)?;
    let counts = sample_outcomes(&dist, config.n_samples, config.seed)?;
    let tv = total_variation(&dist, &counts);
    config.ensure_output_dir()?;
    let path = config.output_dir.join("counts.json");
    fs::write(&path, serde_json::to_string_pretty(&counts)?)?;
    println!(
        "outcomes={} n_samples={} total_mass={:.9} tv_distance={:.6}",
        counts.counts.len(),
        counts.n_samples,
        counts.total_mass,
        tv
    );
    Ok(path)
}

/// Noise study over perturbed mesh angles; writes `W,mean_cdf,std_cdf` rows.
pub fn cmd_noise(config: &RunConfig) -> Result<PathBuf> {
    let params = config.params()?;
    let points = noise_study(
        &params,
        config.fidelity_threshold,
        config.epsilon,
        config.trials,
        &config.eval_points,
        config.seed,
    )?;
    config.ensure_output_dir()?;
    let path = config.output_dir.join("noise.csv");
    let mut text = String::from("W,mean_cdf,std_cdf\n");
    for p in &points {
        text.push_str(&format!("{},{},{}\n", p.w, p.mean_cdf, p.std_cdf));
    }
    fs::write(&path, text)?;
    for p in &points {
        println!("W={} mean_cdf={:.6} std_cdf={:.3e}", p.w, p.mean_cdf, p.std_cdf);
    }
    Ok(path)
}

/// Inclusive linear grid, or the single start point when count is 1.
pub fn linspace(start: f64, stop: f64, count: usize) -> Vec<f64> {
    if count <= 1 {
        return vec![start];
    }
    (0..count)
        .map(|i| start + (stop - start) * i as f64 / (count - 1) as f64)
        .collect()
}

/// Parse "start:stop:count" or a comma-separated list of values.
pub fn parse_grid(text: &str) -> Result<Vec<f64>> {
    if text.contains(':') {
        let parts: Vec<&str> = text.split(':').collect();
        if parts.len() != 3 {
            return Err(Error::invalid("grid must be start:stop:count or v1,v2,..."));
        }
        let start: f64 = parts[0].parse().map_err(|_| Error::invalid("bad grid start"))?;
        let stop: f64 = parts[1].parse().map_err(|_| Error::invalid("bad grid stop"))?;
        let count: usize = parts[2].parse().map_err(|_| Error::invalid("bad grid count"))?;
        if count == 0 {
            return Err(Error::invalid("grid count must be positive"));
        }
        Ok(linspace(start, stop, count))
    } else {
        text.split(',')
            .map(|s| s.trim().parse::<f64>().map_err(|_| Error::invalid(format!("bad grid value '{s}'"))))
            .collect()
    }
}
