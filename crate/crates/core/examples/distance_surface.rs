// Distance between the 0.05- and 0.2-thin tubes over a grid of
// nonsingular solid tori with core length at most 0.05.

use tubedist::cli::{cmd_surface, Axis, SurfaceSummary, SweepConfig};
use tubedist::tube::TWO_PI;

pub fn run_example() -> tubedist::Result<SurfaceSummary> {
    let (delta, eps) = (0.05, 0.2);
    let steps = 150;
    let cfg = SweepConfig {
        lambda: Axis::new("lambda", delta / steps as f64, delta, steps)?,
        tau: Axis::new("tau", 0.0, std::f64::consts::PI, steps + 1)?,
        alpha: TWO_PI,
    };
    let (_, summary) = cmd_surface(&cfg, delta, eps)?;
    println!("{} cells", summary.cells);
    println!(
        "min {:.6} at lambda = {:.5}, tau = {:.5}",
        summary.min, summary.argmin.0, summary.argmin.1
    );
    println!(
        "max {:.6} at lambda = {:.5}, tau = {:.5}",
        summary.max, summary.argmax.0, summary.argmax.1
    );
    println!("(eps - delta)/2 = {}", (eps - delta) / 2.0);
    Ok(summary)
}

fn main() -> tubedist::Result<()> {
    run_example().map(|_| ())
}
