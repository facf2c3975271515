// For a few (delta, eps), the torus from the 1/n² + 2πi/n family whose
// tube distance stays within 2.2 of the lower bound.

use tubedist::sharpness::{sharpness_example, SharpnessWitness};

pub fn run_example() -> tubedist::Result<Vec<SharpnessWitness>> {
    let mut out = Vec::new();
    for (delta, eps) in [(0.01, 0.29), (0.0124, 0.3), (0.001, 0.1), (1e-5, 0.3)] {
        let w = sharpness_example(delta, eps)?;
        println!(
            "delta {delta:<7} eps {eps:<5} n = {:>3}: lower {:.4} <= d {:.4} <= {:.4}, gap {:.4}",
            w.n, w.lower, w.actual_distance, w.sharpness_upper, w.gap_to_lower
        );
        out.push(w);
    }
    Ok(out)
}

fn main() -> tubedist::Result<()> {
    run_example().map(|_| ())
}
