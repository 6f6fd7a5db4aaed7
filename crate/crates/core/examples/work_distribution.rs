//! Assemble the two-point-measurement work distribution for three thermal
//! bosons in the expanding piston and print its cumulative curve.
//!
//! Run with: cargo run --example work_distribution

use pistonwork::piston::PistonParams;
use pistonwork::workdist::{cumulative, work_distribution};

fn main() -> pistonwork::Result<()> {
    let params = PistonParams::new(1.0, 2.0, 0.4, 0.1, 3)?;
    let wd = work_distribution(&params, 0.995)?;

    println!(
        "{} distinct work values spanning [{:.3}, {:.3}]",
        wd.support.len(),
        wd.support.first().unwrap().0,
        wd.support.last().unwrap().0
    );
    println!(
        "total mass {:.9}, truncation deficit {:.3e}, free-energy (Jarzynski) deviation {:.3e}\n",
        wd.total_mass(),
        wd.mass_deficit,
        wd.jarzynski_deviation
    );

    println!("largest contributions:");
    let mut ranked: Vec<usize> = (0..wd.support.len()).collect();
    ranked.sort_by(|&a, &b| wd.support[b].1.partial_cmp(&wd.support[a].1).unwrap());
    for &i in ranked.iter().take(6) {
        println!("  W = {:>9.4}   p = {:.6}", wd.support[i].0, wd.support[i].1);
    }

    println!("\ncumulative distribution at the reporting points:");
    for w in [-48.0, -42.0, -36.0, -27.0, -16.0, -8.0, 4.0] {
        println!("  chi({w:>5}) = {:.6}", cumulative(&wd, w));
    }
    Ok(())
}
