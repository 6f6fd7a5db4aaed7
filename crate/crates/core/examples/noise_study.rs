//! Spread of the cumulative work distribution when every beam-splitter angle
//! and output phase of the compiled mesh carries independent uniform noise.
//!
//! Run with: cargo run --example noise_study

use pistonwork::piston::PistonParams;
use pistonwork::workdist::noise_study;

fn main() -> pistonwork::Result<()> {
    let params = PistonParams::new(1.0, 2.0, 0.4, 0.1, 3)?;
    let eval_points = [-48.0, -42.0, -36.0, -27.0, -16.0, -8.0, 4.0];

    for epsilon in [0.005, 0.01, 0.02] {
        println!("noise half-width {epsilon}:");
        let points = noise_study(&params, 0.995, epsilon, 100, &eval_points, 42)?;
        for p in &points {
            println!("  W = {:>5}   mean chi = {:.6}   std = {:.3e}", p.w, p.mean_cdf, p.std_cdf);
        }
        println!();
    }
    Ok(())
}
