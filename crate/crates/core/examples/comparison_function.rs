// The comparison function j(delta, eps) and the additive constant r_min it
// produces for several upper limits on eps.

use tubedist::bounds::{j_function, j_maximum, r_min_for, theorem_r_min};

pub fn run_example() -> tubedist::Result<Vec<(f64, f64)>> {
    for delta in [0.001, 0.005, 0.0093026, 0.012] {
        println!("j({delta}, 0.3) = {:.6}", j_function(delta, 0.3)?);
    }
    let mut out = Vec::new();
    for eps_max in [0.3, 0.5, 1.0, 1.475] {
        let (arg, jmax) = j_maximum(eps_max)?;
        let r = r_min_for(eps_max)?;
        println!(
            "eps_max {eps_max:<5}: max j = {jmax:.6} at delta = {arg:.7}, r_min = {r:.6}, used {:.6}",
            theorem_r_min(eps_max)?
        );
        out.push((eps_max, r));
    }
    Ok(out)
}

fn main() -> tubedist::Result<()> {
    run_example().map(|_| ())
}
