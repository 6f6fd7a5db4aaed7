//! How many levels the truncation keeps as the expansion gets faster or
//! longer: the mode count of the interferometer grows close to linearly in
//! both parameters.
//!
//! Run with: cargo run --example dimension_sweep

use pistonwork::cli::linspace;
use pistonwork::piston::{sweep_dimension, PistonParams};

fn main() -> pistonwork::Result<()> {
    println!("expansion speed sweep (lambda 1 -> 2, threshold 0.995):");
    for v in linspace(0.2, 1.2, 6) {
        let params = PistonParams::new(1.0, 2.0, v, 0.1, 3)?;
        println!("  v = {v:.2}  ->  dim {}", sweep_dimension(&params, 0.995)?);
    }

    println!("\nfinal-length sweep (v = 1, threshold 0.995):");
    for lambda_tau in linspace(1.25, 2.5, 6) {
        let params = PistonParams::new(1.0, lambda_tau, 1.0, 0.1, 3)?;
        println!("  lambda_tau = {lambda_tau:.2}  ->  dim {}", sweep_dimension(&params, 0.995)?);
    }
    Ok(())
}
