//! Simulate the boson-sampling experiment for three photons entering the
//! compiled piston matrix in the lowest mode: exact outcome probabilities
//! from permanents, then seeded coincidence counts.
//!
//! Run with: cargo run --example boson_sampling

use pistonwork::fock::Occupation;
use pistonwork::piston::{truncate_to_fidelity, PistonParams};
use pistonwork::sampler::{output_distribution, sample_outcomes, total_variation};

fn main() -> pistonwork::Result<()> {
    let params = PistonParams::new(1.0, 2.0, 0.4, 0.1, 3)?;
    let matrix = truncate_to_fidelity(&params, 0.995)?;

    let input = Occupation::concentrated(params.n_bosons(), 0, matrix.dim);
    let dist = output_distribution(&matrix.view(), &input)?;
    println!(
        "input {:?} over {} outcomes, enumerated mass {:.6} (deficit from truncation {:.2e})",
        input.0,
        dist.outcomes.len(),
        dist.total_mass,
        1.0 - dist.total_mass
    );

    let counts = sample_outcomes(&dist, 100_000, 7)?;
    println!(
        "sampled {} coincidence events with rng '{}' seed {}\n",
        counts.n_samples, counts.rng, counts.seed
    );

    let mut ranked: Vec<usize> = (0..dist.outcomes.len()).collect();
    ranked.sort_by(|&a, &b| dist.outcomes[b].1.partial_cmp(&dist.outcomes[a].1).unwrap());
    println!("top outcomes (exact probability vs sampled frequency):");
    for &i in ranked.iter().take(8) {
        let (occ, p) = &dist.outcomes[i];
        println!(
            "  {:?}  exact {:.6}  sampled {:.6}  ({} events)",
            occ.0, p, counts.counts[i].frequency, counts.counts[i].count
        );
    }
    println!("\ntotal-variation distance: {:.5}", total_variation(&dist, &counts));
    Ok(())
}
