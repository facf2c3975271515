// Tube radius of the solid torus with core length 0.1 and rotation π, just
// below and just above the point where the square of the generator takes
// over.

use tubedist::{tube_radius, tube_radius_oracle, ModelSolidTorus, TubeRadiusResult};

pub fn run_example() -> tubedist::Result<Vec<(f64, TubeRadiusResult)>> {
    let torus = ModelSolidTorus::nonsingular(0.1, std::f64::consts::PI)?;
    let mut out = Vec::new();
    for eps in [0.05, 0.2, 0.201, 0.3] {
        let res = tube_radius(&torus, eps)?;
        let oracle = tube_radius_oracle(&torus, eps)?;
        let realizer = res
            .realizer
            .map_or("empty thin part".to_string(), |r| r.to_string());
        println!(
            "eps = {eps:<6} r = {:<22} ({realizer}), oracle {}",
            res.radius, oracle
        );
        out.push((eps, res));
    }
    Ok(out)
}

fn main() -> tubedist::Result<()> {
    run_example().map(|_| ())
}
