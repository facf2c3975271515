// Which power of the core generator realizes the 0.2-tube radius, drawn
// as a coarse character map over (lambda, tau).

use tubedist::cli::{cmd_region_map, Axis, RegionRow, SweepConfig};
use tubedist::tube::TWO_PI;

pub fn run_example() -> tubedist::Result<Vec<RegionRow>> {
    let eps = 0.2;
    let cfg = SweepConfig {
        lambda: Axis::new("lambda", 0.004, 0.22, 28)?,
        tau: Axis::new("tau", 0.0, std::f64::consts::PI, 64)?,
        alpha: TWO_PI,
    };
    let rows = cmd_region_map(&cfg, eps)?;
    println!(
        "rows: lambda from {} (top) to {}; columns: tau from 0 to pi",
        cfg.lambda.lo, cfg.lambda.hi
    );
    for line in rows.chunks(cfg.tau.steps) {
        let s: String = line
            .iter()
            .map(|r| match r.power {
                0 => '.',
                1..=9 => char::from_digit(r.power as u32, 10).unwrap(),
                _ => '+',
            })
            .collect();
        println!("{:6.4} {s}", line[0].lambda);
    }
    Ok(rows)
}

fn main() -> tubedist::Result<()> {
    run_example().map(|_| ())
}
