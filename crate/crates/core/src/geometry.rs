//! Cylindrical-coordinate geometry around the (possibly branched) core
//! geodesic: distances on an equidistant cylinder, translation radii, the
//! flat metric of the equidistant torus and its area.
//!
//! All `cosh d` evaluations go through the split
//! `cosh d - 1 = (cosh dz - 1) cosh^2 r + (1 - cos dt) sinh^2 r`,
//! with both brackets computed from [`f_cosh`]/[`g_cos`], so that nothing
//! cancels when the lengths and angles involved are small.

use std::f64::consts::PI;

use serde::Serialize;

use crate::error::{invalid, Error, Result};
use crate::trig::{
    arccosh_from_excess, arccosh_sqrt_from_excess, cosh_minus_one, one_minus_cos, ExtendedLength,
};

/// Coordinates `(r, zeta, theta)`: distance from the core, position along it,
/// and angle around it. The angle is a real number, not a class mod 2π.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct CylindricalPoint {
    pub r: f64,
    pub zeta: f64,
    pub theta: f64,
}

impl CylindricalPoint {
    pub fn new(r: f64, zeta: f64, theta: f64) -> Result<Self> {
        if !(r >= 0.0) || !r.is_finite() {
            return Err(invalid("r", r, "radius must be finite and nonnegative"));
        }
        Ok(CylindricalPoint { r, zeta, theta })
    }
}

/// Translation distance plus rotation angle of an isometry along the core.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct ComplexLength {
    pub lambda: f64,
    pub tau: f64,
}

impl ComplexLength {
    pub fn new(lambda: f64, tau: f64) -> Result<Self> {
        if !(lambda >= 0.0) {
            return Err(invalid(
                "lambda",
                lambda,
                "translation length must be nonnegative",
            ));
        }
        if lambda == 0.0 && tau == 0.0 {
            return Err(Error::IdentityIsometry);
        }
        Ok(ComplexLength { lambda, tau })
    }

    /// The `n`-th power, with the rotation reduced into `[-period/2, period/2)`.
    pub fn power(self, n: u64, period: f64) -> ComplexLength {
        let n = n as f64;
        ComplexLength {
            lambda: n * self.lambda,
            tau: crate::trig::sym_mod(n * self.tau, period),
        }
    }

    /// Translation radius of this isometry for displacement `eps`.
    pub fn trad(self, eps: f64) -> Result<ExtendedLength> {
        trad(self.lambda, self.tau, eps)
    }
}

/// How the angular difference between two points is interpreted.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum AngularBranch {
    /// In the branched cover: `|dtheta|` is used as is, and anything at or
    /// beyond π is a path through the core (`cos dtheta` clamps to -1).
    Branched,
    /// In ordinary hyperbolic space: the angle is first reduced mod 2π.
    Ambient,
}

/// `cosh d - 1` for two points at common radius `r` whose coordinates differ
/// by `dzeta` and `dtheta`, with `|dtheta|` clamped at π.
pub(crate) fn cosh_distance_excess(r: f64, dzeta: f64, dtheta: f64) -> f64 {
    let dtheta = dtheta.abs().min(PI);
    let c = r.cosh();
    let s = r.sinh();
    cosh_minus_one(dzeta) * c * c + one_minus_cos(dtheta) * s * s
}

/// Distance between two points on the same equidistant cylinder.
pub fn cyl_distance(
    p: CylindricalPoint,
    q: CylindricalPoint,
    branch: AngularBranch,
) -> Result<f64> {
    let scale = p.r.abs().max(q.r.abs()).max(1.0);
    if (p.r - q.r).abs() > 1e-12 * scale {
        return Err(Error::RadiusMismatch(p.r, q.r));
    }
    let dtheta = match branch {
        AngularBranch::Branched => p.theta - q.theta,
        AngularBranch::Ambient => crate::trig::sym_mod(p.theta - q.theta, 2.0 * PI),
    };
    let excess = cosh_distance_excess(p.r, p.zeta - q.zeta, dtheta);
    Ok(arccosh_from_excess(excess).value())
}

/// Translation radius: the radius at which the isometry with complex length
/// `lambda + i theta` moves points by exactly `eps`.
///
/// `theta` must already be reduced to `|theta| <= π`. Returns `NEG_INF` when
/// `eps < lambda`, since then every point moves further than `eps`.
pub fn trad(lambda: f64, theta: f64, eps: f64) -> Result<ExtendedLength> {
    if !(lambda >= 0.0) {
        return Err(invalid(
            "lambda",
            lambda,
            "translation length must be nonnegative",
        ));
    }
    if !(eps >= 0.0) {
        return Err(invalid("eps", eps, "displacement must be nonnegative"));
    }
    if !(theta.abs() <= PI * (1.0 + 1e-15)) {
        return Err(invalid(
            "theta",
            theta,
            "rotation must be reduced to |theta| <= pi",
        ));
    }
    if lambda == 0.0 && theta == 0.0 {
        return Err(Error::IdentityIsometry);
    }
    Ok(trad_unchecked(lambda, theta, eps))
}

/// [`trad`] without argument validation, for inner loops.
pub(crate) fn trad_unchecked(lambda: f64, theta: f64, eps: f64) -> ExtendedLength {
    let eps_part = cosh_minus_one(eps);
    let lambda_part = cosh_minus_one(lambda);
    let rot = one_minus_cos(theta.abs().min(PI));
    // cosh^2 r = (eps_part + rot) / (lambda_part + rot); subtract one exactly
    let excess = (eps_part - lambda_part) / (lambda_part + rot);
    arccosh_sqrt_from_excess(excess)
}

/// Length of the straight segment with displacements `(dzeta, dtheta)` in the
/// flat metric `cosh^2 r dzeta^2 + sinh^2 r dtheta^2` of the torus at radius `r`.
pub fn euclidean_distance(r: f64, dzeta: f64, dtheta: f64) -> f64 {
    (dzeta * r.cosh()).hypot(dtheta * r.sinh())
}

/// Length at radius `big_r` of the cylindrical projection of the flat
/// geodesic with displacements `(dzeta, dtheta)` drawn at radius `r`.
pub fn project_geodesic_length(dzeta: f64, dtheta: f64, r: f64, big_r: f64) -> Result<f64> {
    if !(r > 0.0) {
        return Err(invalid("r", r, "inner radius must be positive"));
    }
    if !(big_r > r) {
        return Err(invalid("R", big_r, "outer radius must exceed inner radius"));
    }
    Ok(euclidean_distance(big_r, dzeta, dtheta))
}

/// Area of the equidistant torus at radius `r` in a solid torus with cone
/// angle `alpha` and core length `lambda`.
pub fn torus_area(alpha: f64, lambda: f64, r: f64) -> f64 {
    0.5 * alpha * lambda * (2.0 * r).sinh()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pt(r: f64, z: f64, t: f64) -> CylindricalPoint {
        CylindricalPoint::new(r, z, t).unwrap()
    }

    #[test]
    fn distance_to_self_is_zero() {
        let p = pt(0.7, 1.2, -0.4);
        assert_eq!(cyl_distance(p, p, AngularBranch::Branched).unwrap(), 0.0);
    }

    #[test]
    fn half_turn_passes_through_the_axis() {
        for &r in &[0.01, 0.5, 3.0] {
            let d = cyl_distance(pt(r, 0.0, 0.0), pt(r, 0.0, PI), AngularBranch::Branched).unwrap();
            assert!((d - 2.0 * r).abs() < 1e-13 * r.max(1.0), "r = {r}: {d}");
        }
    }

    #[test]
    fn branched_angles_beyond_pi_clamp() {
        let r = 0.3;
        let at_pi = cyl_distance(pt(r, 0.1, 0.0), pt(r, 0.0, PI), AngularBranch::Branched).unwrap();
        let beyond =
            cyl_distance(pt(r, 0.1, 0.0), pt(r, 0.0, 5.0), AngularBranch::Branched).unwrap();
        assert_eq!(at_pi, beyond);
        // cosh d = (cosh dz + 1) cosh^2 r - 1
        let direct = ((0.1f64.cosh() + 1.0) * r.cosh().powi(2) - 1.0).acosh();
        assert!((beyond - direct).abs() < 1e-14);
    }

    #[test]
    fn ambient_branch_reduces_angle() {
        let r = 0.4;
        let a = cyl_distance(
            pt(r, 0.2, 0.0),
            pt(r, 0.0, 2.0 * PI - 0.3),
            AngularBranch::Ambient,
        )
        .unwrap();
        let b = cyl_distance(pt(r, 0.2, 0.0), pt(r, 0.0, 0.3), AngularBranch::Branched).unwrap();
        assert!((a - b).abs() < 1e-14);
    }

    #[test]
    fn example_pi_displacement() {
        let r = trad(0.2, 0.0, 0.201).unwrap().value();
        let d = cyl_distance(pt(r, 0.0, 0.0), pt(r, 0.1, PI), AngularBranch::Branched).unwrap();
        assert!((d - 0.2239).abs() < 1e-4, "{d}");
    }

    #[test]
    fn mismatched_radii_are_rejected() {
        let err = cyl_distance(
            pt(0.1, 0.0, 0.0),
            pt(0.2, 0.0, 0.0),
            AngularBranch::Branched,
        );
        assert!(matches!(err, Err(Error::RadiusMismatch(..))));
    }

    #[test]
    fn trad_examples() {
        for &(l, t) in &[(0.1, 0.3), (0.0, 1.0), (0.2, -PI), (1.5, 0.0)] {
            assert_eq!(trad(l, t, l).unwrap(), ExtendedLength::ZERO);
        }
        assert!((trad(0.2, 0.0, 0.201).unwrap().value() - 0.100_125_837_786_725).abs() < 1e-12);
        assert!((trad(0.1, PI, 0.201).unwrap().value() - 0.087_143_135_046_738).abs() < 1e-12);
        assert!(trad(0.3, 0.0, 0.2).unwrap().is_neg_inf());
    }

    #[test]
    fn trad_rejects_identity_and_unreduced_angles() {
        assert_eq!(trad(0.0, 0.0, 0.1), Err(Error::IdentityIsometry));
        assert!(trad(0.1, 4.0, 0.2).is_err());
        assert!(trad(-0.1, 0.0, 0.2).is_err());
    }

    #[test]
    fn pure_elliptic_trad() {
        // cosh^2 r = (cosh eps - cos a)/(1 - cos a)
        let (a, eps) = (1.0f64, 0.2f64);
        let expect = ((eps.cosh() - a.cos()) / (1.0 - a.cos())).sqrt().acosh();
        assert!((trad(0.0, a, eps).unwrap().value() - expect).abs() < 1e-13);
        // a half turn moves points by 2r
        assert!((trad(0.0, PI, eps).unwrap().value() - eps / 2.0).abs() < 1e-15);
    }

    #[test]
    fn trad_small_regime_has_no_cancellation() {
        // lambda = 1e-9, theta = 0, eps = 2e-9: cosh^2 r = f(eps) eps^2 / (f(lambda) lambda^2) ~ 4
        let r = trad(1e-9, 0.0, 2e-9).unwrap().value();
        assert!((r - 2f64.acosh()).abs() < 1e-12, "{r}");
    }

    #[test]
    fn euclidean_examples() {
        assert_eq!(euclidean_distance(0.7, 0.0, 0.0), 0.0);
        assert!((euclidean_distance(0.7, 0.25, 0.0) - 0.25 * 0.7f64.cosh()).abs() < 1e-15);
        assert!((euclidean_distance(1.0, 0.3, 0.4) - 0.659_753_333_743_342_2).abs() < 1e-14);
    }

    #[test]
    fn euclidean_matches_quadrature_of_the_metric() {
        // integrate sqrt(cosh^2 r z'^2 + sinh^2 r t'^2) along the straight segment
        let (r, dz, dt) = (1.0f64, 0.3f64, 0.4f64);
        let steps = 1000;
        let h = 1.0 / steps as f64;
        let speed = |_: f64| ((r.cosh() * dz).powi(2) + (r.sinh() * dt).powi(2)).sqrt();
        let integral: f64 = (0..steps)
            .map(|i| {
                let a = i as f64 * h;
                h / 6.0 * (speed(a) + 4.0 * speed(a + h / 2.0) + speed(a + h))
            })
            .sum();
        assert!((integral - euclidean_distance(r, dz, dt)).abs() < 1e-12);
    }

    #[test]
    fn projection_examples() {
        let (r, big) = (0.5f64, 1.0f64);
        let zeta = 0.3;
        let ratio =
            project_geodesic_length(zeta, 0.0, r, big).unwrap() / euclidean_distance(r, zeta, 0.0);
        assert!((ratio - big.cosh() / r.cosh()).abs() < 1e-14);
        let ratio =
            project_geodesic_length(0.0, 0.4, r, big).unwrap() / euclidean_distance(r, 0.0, 0.4);
        assert!((ratio - big.sinh() / r.sinh()).abs() < 1e-14);
        let ratio =
            project_geodesic_length(0.3, 0.4, r, big).unwrap() / euclidean_distance(r, 0.3, 0.4);
        assert!(ratio > big.cosh() / r.cosh() && ratio < big.sinh() / r.sinh());
        assert!(project_geodesic_length(0.3, 0.4, 1.0, 1.0).is_err());
    }

    #[test]
    fn torus_area_examples() {
        assert!(torus_area(2.0 * PI, 1.0, 1e-12) < 1e-11);
        let r = 0.37;
        assert!((torus_area(2.0 * PI, 1.0, r) - PI * (2.0 * r).sinh()).abs() < 1e-15);
        assert!((torus_area(PI, 0.1, 1.0) - 0.569_705_900_644_393_8).abs() < 1e-15);
    }

    #[test]
    fn complex_length_powers_reduce_rotation() {
        let z = ComplexLength::new(0.1, PI).unwrap();
        let z2 = z.power(2, 2.0 * PI);
        assert!((z2.lambda - 0.2).abs() < 1e-16);
        assert!(z2.tau.abs() < 1e-15);
        assert_eq!(ComplexLength::new(0.0, 0.0), Err(Error::IdentityIsometry));
    }
}
