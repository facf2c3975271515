// A small seeded campaign checking both bounds on random solid tori, first
// in the main range and then with eps up to 1.475.

use tubedist::cli::{cmd_verify, VerifySummary};

pub fn run_example() -> tubedist::Result<Vec<VerifySummary>> {
    let mut out = Vec::new();
    for eps_max in [0.3, 1.475] {
        let (_, s) = cmd_verify(7, 2000, eps_max, false)?;
        println!(
            "eps_max {eps_max}: {} samples, {} violations, worst margins {:.3e} (lower) {:.3e} (upper)",
            s.samples, s.violations, s.worst_lower_margin, s.worst_upper_margin
        );
        out.push(s);
    }
    Ok(out)
}

fn main() -> tubedist::Result<()> {
    run_example().map(|_| ())
}
