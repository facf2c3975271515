// The tori with core 1/n² + 2πi/n: the n-th power realizes every tube
// radius from eps = 1.016/n up, and cosh r is close to eps n.

use tubedist::sharpness::{biringer_cosh_radius, biringer_radius_check, biringer_torus};
use tubedist::tube_radius;

pub fn run_example() -> tubedist::Result<bool> {
    let mut all = true;
    for n in [4u64, 6, 10, 20, 40] {
        let eps = 0.3;
        let torus = biringer_torus(n)?;
        let res = tube_radius(&torus, eps)?;
        let ok = biringer_radius_check(n, eps)?;
        all &= ok;
        println!(
            "n = {n:>2}: cosh r = {:.9}, closed form {:.9}, eps n = {:.3}, {}",
            res.radius.value().cosh(),
            biringer_cosh_radius(n, eps),
            eps * n as f64,
            res.realizer.map_or("empty".into(), |r| r.to_string())
        );
    }
    Ok(all)
}

fn main() -> tubedist::Result<()> {
    run_example().map(|_| ())
}
