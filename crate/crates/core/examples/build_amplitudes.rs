//! Build the truncated transition-amplitude matrix for the worked
//! three-boson expansion (λ₀ = 1 → λτ = 2 at v = 0.4) and inspect how close
//! it sits to a unitary.
//!
//! Run with: cargo run --example build_amplitudes

use pistonwork::piston::{truncate_to_fidelity, PistonParams};

fn main() -> pistonwork::Result<()> {
    let params = PistonParams::new(1.0, 2.0, 0.4, 0.1, 3)?;
    let matrix = truncate_to_fidelity(&params, 0.995)?;

    println!(
        "retained {} levels (intermediate modes up to {}), unitarity fidelity {:.6}",
        matrix.dim, matrix.j_max, matrix.fidelity
    );
    println!("\namplitudes (row = final level, column = initial level):");
    for r in 0..matrix.dim {
        let row: Vec<String> = (0..matrix.dim)
            .map(|c| {
                let z = matrix.entries[[r, c]];
                format!("{:+.4}{:+.4}i", z.re, z.im)
            })
            .collect();
        println!("  [{}]", row.join("  "));
    }

    println!("\ncaptured probability per level:");
    for i in 0..matrix.dim {
        let col: f64 = (0..matrix.dim).map(|f| matrix.entries[[f, i]].norm_sqr()).sum();
        let row: f64 = (0..matrix.dim).map(|f| matrix.entries[[i, f]].norm_sqr()).sum();
        println!("  level {}: column {:.6}, row {:.6}", i + 1, col, row);
    }
    Ok(())
}
