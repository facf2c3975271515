// How deep the eps-thin tube must be: the packing bound on cosh r(eps)
// and the short power found by the search behind it.

use tubedist::bounds::{cgm_power_search, depth_lower_bound};
use tubedist::{tube_radius, ModelSolidTorus};

pub fn run_example() -> tubedist::Result<Vec<(f64, f64)>> {
    let eps = 0.3;
    let mut out = Vec::new();
    for (lambda, tau) in [(0.001, 2.0), (0.01, 0.5), (0.05, 3.0), (0.2, 1.0)] {
        let r = tube_radius(&ModelSolidTorus::nonsingular(lambda, tau)?, eps)?
            .radius
            .value();
        let bound = depth_lower_bound(eps, lambda)?;
        let m = cgm_power_search(lambda, tau)?;
        println!(
            "lambda {lambda:<6} tau {tau:<4}: cosh r = {:.4} >= {bound:.4}; short power m = {m}",
            r.cosh()
        );
        out.push((r.cosh(), bound));
    }
    Ok(out)
}

fn main() -> tubedist::Result<()> {
    run_example().map(|_| ())
}
