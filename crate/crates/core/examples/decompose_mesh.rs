//! Compile the worked-example amplitude matrix into a rectangular mesh of
//! variable beam splitters and check that multiplying the program back out
//! reproduces the matrix.
//!
//! Run with: cargo run --example decompose_mesh

use pistonwork::interferometer::{compile, resynthesize};
use pistonwork::linalg::max_abs_diff;
use pistonwork::piston::{truncate_to_fidelity, PistonParams};

fn main() -> pistonwork::Result<()> {
    let params = PistonParams::new(1.0, 2.0, 0.4, 0.1, 3)?;
    let matrix = truncate_to_fidelity(&params, 0.995)?;
    let program = compile(&matrix.view())?;

    println!(
        "{} modes -> {} variable beam splitters + {} output phases ({} phase shifters total)",
        program.dim,
        program.gates.len(),
        program.output_phases.len(),
        2 * program.gates.len() + program.output_phases.len()
    );
    println!("projection residual (distance to the nearest unitary): {:.4e}\n", program.projection_residual);

    println!("gates in application order:");
    for g in &program.gates {
        println!(
            "  step {}  modes ({}, {})  theta = {:.4}  phi = {:.4}",
            g.step,
            g.a,
            g.a + 1,
            g.theta,
            g.phi
        );
    }
    println!("\noutput phases: {:?}", program.output_phases.iter().map(|p| (p * 1e4).round() / 1e4).collect::<Vec<_>>());

    let resynth = resynthesize(&program);
    println!(
        "\nresynthesis distance to the raw matrix: {:.4e} (projection accounts for all of it)",
        max_abs_diff(&resynth, &matrix.entries)
    );
    Ok(())
}
