//! The family `N_n = N(2π, 1/n², 2π/n)` and the witnesses it provides for
//! near-optimality of the lower bound.

use serde::Serialize;

use crate::bounds::{lower_bound, MAIN_EPS_MAX, PACKING_CONSTANT, R_MIN};
use crate::error::{invalid, Result};
use crate::trig::cosh_minus_one;
use crate::tube::{tube_distance, tube_radius, ModelSolidTorus, Realizer, TWO_PI};

/// Multiplier in the witness upper bound `arccosh(1.116 eps / sqrt(delta))`.
pub const WITNESS_FACTOR: f64 = 1.116;

/// Smallest `eps * n` for which the `n`-th power realizes the tube radius.
pub const BIRINGER_EPS_FACTOR: f64 = 1.016;

/// Upper end of the interval containing `cosh r / (eps n)`.
pub const BIRINGER_SPREAD: f64 = 1.004;

/// The witnesses stay within this distance of the lower bound.
pub const MAX_GAP: f64 = 2.2;

const RANGE_SLACK: f64 = 1e-12;

/// The torus with core `1/n² + 2πi/n`.
pub fn biringer_torus(n: u64) -> Result<ModelSolidTorus> {
    if n < 4 {
        return Err(invalid("n", n as f64, "family starts at n = 4"));
    }
    let nf = n as f64;
    ModelSolidTorus::nonsingular(1.0 / (nf * nf), TWO_PI / nf)
}

/// Closed form `sqrt((cosh eps - 1)/(cosh(1/n) - 1))` for `cosh r(eps)` in `N_n`.
pub fn biringer_cosh_radius(n: u64, eps: f64) -> f64 {
    (cosh_minus_one(eps) / cosh_minus_one(1.0 / n as f64)).sqrt()
}

/// Checks, for `1.016/n <= eps <= 0.3`, that the `n`-th power realizes
/// `r(eps)` in `N_n`, that `cosh r(eps)` matches the closed form to `1e-9`,
/// and that it lies in `(eps n, 1.004 eps n)`.
pub fn biringer_radius_check(n: u64, eps: f64) -> Result<bool> {
    let torus = biringer_torus(n)?;
    let lo = BIRINGER_EPS_FACTOR / n as f64;
    if !(eps >= lo * (1.0 - RANGE_SLACK) && eps <= MAIN_EPS_MAX) {
        return Err(invalid("eps", eps, "must lie in [1.016/n, 0.3]"));
    }
    let res = tube_radius(&torus, eps)?;
    if res.realizer != Some(Realizer::Power(n)) {
        return Ok(false);
    }
    let cosh_r = res.radius.value().cosh();
    let closed = biringer_cosh_radius(n, eps);
    let scaled = eps * n as f64;
    Ok((cosh_r - closed).abs() <= 1e-9 && cosh_r > scaled && cosh_r < BIRINGER_SPREAD * scaled)
}

/// The `n >= 4` with `1/n <= sqrt(delta) < 1/(n - 1)`.
pub fn witness_power(delta: f64) -> Result<u64> {
    if !(delta > 0.0 && delta < 1.0 / 9.0) {
        return Err(invalid("delta", delta, "must lie in (0, 1/9)"));
    }
    let s = delta.sqrt();
    let mut n = (1.0 / s).floor().max(2.0) as u64;
    // 1/s can round across an integer; settle the half-open condition directly
    while 1.0 / (n as f64) > s {
        n += 1;
    }
    while n > 2 && 1.0 / ((n - 1) as f64) <= s {
        n -= 1;
    }
    Ok(n)
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct SharpnessWitness {
    pub n: u64,
    pub torus: ModelSolidTorus,
    pub actual_distance: f64,
    pub sharpness_upper: f64,
    pub lower: f64,
    pub gap_to_lower: f64,
}

impl SharpnessWitness {
    /// `actual <= sharpness_upper` and `gap_to_lower < 2.2`.
    pub fn holds(&self) -> bool {
        self.actual_distance <= self.sharpness_upper + crate::bounds::CERT_TOL
            && self.gap_to_lower < MAX_GAP
    }
}

/// Witness torus `N_n` for `0 < sqrt(7.256 delta) <= eps <= 0.3`.
pub fn sharpness_example(delta: f64, eps: f64) -> Result<SharpnessWitness> {
    if !(delta > 0.0) {
        return Err(invalid("delta", delta, "must be positive"));
    }
    if !(eps <= MAIN_EPS_MAX) {
        return Err(invalid("eps", eps, "must not exceed 0.3"));
    }
    if !((PACKING_CONSTANT * delta).sqrt() <= eps * (1.0 + RANGE_SLACK)) {
        return Err(invalid("eps", eps, "must be at least sqrt(7.256 delta)"));
    }
    let n = witness_power(delta)?;
    let torus = biringer_torus(n)?;
    let actual_distance = tube_distance(&torus, delta, eps)?;
    let sharpness_upper = (WITNESS_FACTOR * eps / delta.sqrt()).acosh();
    let lower = lower_bound(delta, eps, R_MIN);
    Ok(SharpnessWitness {
        n,
        torus,
        actual_distance,
        sharpness_upper,
        lower,
        gap_to_lower: sharpness_upper - lower,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    #[test]
    fn family_parameters() {
        let t = biringer_torus(4).unwrap();
        assert_eq!(t.lambda(), 0.0625);
        assert!((t.tau() - PI / 2.0).abs() < 1e-15);
        let t = biringer_torus(10).unwrap();
        assert_eq!(t.lambda(), 0.01);
        assert!((t.tau() - 0.628_318_530_717_958_6).abs() < 1e-15);
        let t = biringer_torus(9).unwrap();
        assert_eq!(t.lambda(), 1.0 / 81.0);
        assert!((t.tau() - 2.0 * PI / 9.0).abs() < 1e-15);
        assert!(biringer_torus(3).is_err());
    }

    #[test]
    fn radius_check_examples() {
        assert!(biringer_radius_check(10, 0.2).unwrap());
        assert!((biringer_cosh_radius(10, 0.2) - 2.002_500_520_876_738).abs() < 1e-12);
        assert!(biringer_radius_check(9, 0.3).unwrap());
        assert!(biringer_radius_check(4, 0.254).unwrap());
        assert!(biringer_radius_check(10, 0.05).is_err());
        assert!(biringer_radius_check(10, 0.31).is_err());
    }

    #[test]
    fn witness_power_selection() {
        assert_eq!(witness_power(0.0124).unwrap(), 9);
        assert_eq!(witness_power(0.01).unwrap(), 10);
        assert_eq!(witness_power(1.0 / 144.0).unwrap(), 12);
        assert_eq!(witness_power(1.0 / 144.0 + 1e-12).unwrap(), 12);
        assert_eq!(witness_power(1.0 / 144.0 - 1e-12).unwrap(), 13);
    }

    #[test]
    fn witness_examples() {
        let w = sharpness_example(0.0124, 0.3).unwrap();
        assert_eq!(w.n, 9);
        assert!(w.holds());
        let w = sharpness_example(0.01, 0.29).unwrap();
        assert_eq!(w.n, 10);
        assert!(w.holds());
        assert!(w.gap_to_lower < MAX_GAP);
        assert!(sharpness_example(0.01, 0.2).is_err());
        assert!(sharpness_example(0.01, 0.31).is_err());
    }

    #[test]
    fn derivative_fact_along_the_family() {
        let q = |n: u64| {
            let nf = n as f64;
            (cosh_minus_one(1.0 / nf) - cosh_minus_one(1.0 / (nf * nf)))
                / crate::trig::one_minus_cos(2.0 * PI / nf)
        };
        // n = 4 sits just above the rounded constant 0.02945
        assert!((q(4) - 0.029_459_339_013_905_57).abs() < 1e-15);
        for n in 5..=10_000 {
            assert!(q(n) <= 0.02945, "n = {n}: {}", q(n));
        }
        // what the power identification needs: q(n) < tanh^2 r, with tanh^2 r > 0.0312
        for n in 4..=10_000 {
            assert!(q(n) < 0.0312);
        }
        let t = 1.016f64.acosh().tanh();
        assert!(t * t > 0.0312);
    }
}
