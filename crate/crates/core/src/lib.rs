//! Work statistics of identical bosons in a uniformly expanding one-dimensional
//! piston, evaluated through the machinery of boson sampling.
//!
//! The pipeline has four stages:
//!
//! 1. [`piston`] builds the single-particle transition-amplitude matrix of a
//!    box whose right wall moves outward at constant speed, from closed-form
//!    moving-wall solutions, and truncates it to a near-unitary block.
//! 2. [`fock`] and [`permanent`] turn that matrix into multi-boson transition
//!    probabilities: expand a sub-matrix with repeated rows/columns per the
//!    occupation numbers, then take the squared modulus of its permanent.
//! 3. [`interferometer`] compiles the (unitarized) matrix into a rectangular
//!    mesh of variable beam splitters plus output phases, and [`sampler`]
//!    simulates the corresponding photonic experiment.
//! 4. [`thermal`] and [`workdist`] assemble the two-point-measurement work
//!    distribution over a Boltzmann-weighted initial ensemble, including a
//!    noise study over perturbed mesh angles.
//!
//! Units are M = ħ = k_B = 1 throughout.
//!
//! Every capability has a runnable demo under `examples/`; the `pistonwork`
//! binary exposes the same operations as subcommands for file-based runs.

pub mod cli;
pub mod error;
pub mod fock;
pub mod interferometer;
pub mod linalg;
pub mod permanent;
pub mod piston;
pub mod quadrature;
pub mod sampler;
pub mod thermal;
pub mod workdist;

pub use error::{Error, Result};
pub use fock::{enumerate_occupations, expand_submatrix, transition_probability, Occupation};
pub use interferometer::{
    clements_decompose, compile, make_t_matrix, perturb, resynthesize, unitary_project,
    InterferometerProgram, TGate,
};
pub use permanent::{permanent_naive, permanent_ryser};
pub use piston::{
    build_amplitude_matrix, eigenenergy, expansion_coefficient, transition_amplitude,
    truncate_to_fidelity, unitarity_fidelity, AmplitudeMatrix, PistonParams,
};
pub use sampler::{estimate_probability, output_distribution, sample_outcomes, OutcomeDistribution};
pub use thermal::{initial_probability, partition_function, thermal_ensemble, ThermalEnsemble};
pub use workdist::{cumulative, noise_study, work_distribution, work_value, WorkDistribution};
