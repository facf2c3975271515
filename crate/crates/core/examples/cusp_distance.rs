// Distance between horospherical levels of a cusp, next to the solid-torus
// bounds it also satisfies.

use tubedist::bounds::R_MIN;
use tubedist::{cusp_distance, lower_bound, upper_bound};

pub fn run_example() -> tubedist::Result<Vec<f64>> {
    let mut out = Vec::new();
    for (delta, eps) in [(0.05, 0.2), (0.1, 0.3), (0.01, 0.02), (0.2, 0.2)] {
        let d = cusp_distance(delta, eps)?;
        println!(
            "delta {delta:<5} eps {eps:<5} d = {d:.6}  bounds [{:.6}, {:.6}]",
            lower_bound(delta, eps, R_MIN),
            upper_bound(delta, eps)
        );
        out.push(d);
    }
    Ok(out)
}

fn main() -> tubedist::Result<()> {
    run_example().map(|_| ())
}
