// Lower and upper bounds on the distance between two thin tubes, checked
// against the exact distance for a few solid tori.

use tubedist::bounds::MAIN_EPS_MAX;
use tubedist::{check_bounds, BoundsCertificate, ModelSolidTorus};

pub fn run_example() -> tubedist::Result<Vec<BoundsCertificate>> {
    let (delta, eps) = (0.05, 0.2);
    let tori = [
        ModelSolidTorus::nonsingular(0.05, 0.0)?,
        ModelSolidTorus::nonsingular(0.05, std::f64::consts::PI)?,
        ModelSolidTorus::nonsingular(0.001, 1.0)?,
        ModelSolidTorus::new(1.0, 0.01, 0.3)?,
    ];
    let mut out = Vec::new();
    for t in &tori {
        let c = check_bounds(t, delta, eps, MAIN_EPS_MAX)?;
        println!(
            "alpha {:.4} lambda {:<6} tau {:.4}: {:.6} <= {:.6} <= {:.6}  {}",
            t.alpha(),
            t.lambda(),
            t.tau(),
            c.lower(),
            c.actual,
            c.upper,
            if c.ok() { "ok" } else { "VIOLATION" }
        );
        out.push(c);
    }
    Ok(out)
}

fn main() -> tubedist::Result<()> {
    run_example().map(|_| ())
}
