//! The model solid torus `N(alpha, lambda, tau)`: tube radii, the power that
//! realizes them, distances between nested tubes, and an independent
//! bisection oracle for the radius.

use std::f64::consts::PI;
use std::fmt;

use serde::Serialize;

use crate::error::{invalid, Error, Result};
use crate::geometry::trad_unchecked;
use crate::trig::{arccosh_sqrt_from_excess, cosh_minus_one, sym_mod, ExtendedLength};

pub const TWO_PI: f64 = 2.0 * PI;

/// Radius values closer than this are treated as a tie.
pub const TIE_TOL: f64 = 1e-12;

/// Bisection stops once the bracket is narrower than this.
pub const ORACLE_TOL: f64 = 1e-10;

const ORACLE_BRACKET_START: f64 = 1.0;
const ORACLE_BRACKET_CAP: f64 = 64.0;

/// Quotient of the branched cover by an elliptic of angle `alpha` and a
/// loxodromic of complex length `lambda + i tau`.
///
/// `tau` is stored reduced into `[-alpha/2, alpha/2)`; with `alpha = 2π`
/// that is the usual `[-π, π)`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct ModelSolidTorus {
    alpha: f64,
    lambda: f64,
    tau: f64,
}

impl ModelSolidTorus {
    pub fn new(alpha: f64, lambda: f64, tau: f64) -> Result<Self> {
        if !(alpha > 0.0 && alpha <= TWO_PI) {
            return Err(invalid("alpha", alpha, "cone angle must lie in (0, 2pi]"));
        }
        if !(lambda > 0.0) || !lambda.is_finite() {
            return Err(invalid("lambda", lambda, "core length must be positive"));
        }
        if !tau.is_finite() {
            return Err(invalid("tau", tau, "rotation must be finite"));
        }
        Ok(ModelSolidTorus {
            alpha,
            lambda,
            tau: sym_mod(tau, alpha),
        })
    }

    /// A nonsingular torus `H^3 / <phi>`.
    pub fn nonsingular(lambda: f64, tau: f64) -> Result<Self> {
        Self::new(TWO_PI, lambda, tau)
    }

    pub fn alpha(&self) -> f64 {
        self.alpha
    }

    pub fn lambda(&self) -> f64 {
        self.lambda
    }

    pub fn tau(&self) -> f64 {
        self.tau
    }

    pub fn is_singular(&self) -> bool {
        self.alpha < TWO_PI
    }

    /// Rotation of the `n`-th power of the core, minimized over the elliptic
    /// coset. For nonsingular tori this is the rotation mod 2π.
    pub fn reduced_rotation(&self, n: u64) -> f64 {
        sym_mod(n as f64 * self.tau, self.alpha)
    }
}

/// The deck transformation realizing the injectivity radius on a tube boundary.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Realizer {
    Elliptic,
    Power(u64),
}

impl Realizer {
    /// Integer encoding used in region maps: `-1` elliptic, `n` for powers.
    pub fn code(self) -> i64 {
        match self {
            Realizer::Elliptic => -1,
            Realizer::Power(n) => n as i64,
        }
    }

    pub fn power(self) -> Option<u64> {
        match self {
            Realizer::Elliptic => None,
            Realizer::Power(n) => Some(n),
        }
    }
}

impl fmt::Display for Realizer {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Realizer::Elliptic => f.write_str("elliptic"),
            Realizer::Power(n) => write!(f, "power {n}"),
        }
    }
}

impl Serialize for Realizer {
    fn serialize<S: serde::Serializer>(
        &self,
        serializer: S,
    ) -> std::result::Result<S::Ok, S::Error> {
        serializer.serialize_i64(self.code())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct TubeRadiusResult {
    pub radius: ExtendedLength,
    /// `None` exactly when the thin part is empty.
    pub realizer: Option<Realizer>,
}

fn check_eps(name: &'static str, eps: f64) -> Result<()> {
    if eps > 0.0 && eps.is_finite() {
        Ok(())
    } else {
        Err(invalid(name, eps, "must be positive and finite"))
    }
}

/// Translation radius of the elliptic generator.
fn elliptic_trad(alpha: f64, eps: f64) -> ExtendedLength {
    if alpha < PI {
        trad_unchecked(0.0, alpha, eps)
    } else {
        // the eps/2 ball reaches the singular core before it meets its image
        ExtendedLength::finite(0.5 * eps)
    }
}

/// Radius of the `eps`-thin tube, the maximum of the translation radii of
/// all powers of the core (and of the elliptic generator when singular).
///
/// Only powers `n <= eps/lambda` can contribute a finite term. The scan also
/// stops once `arccosh sqrt((cosh eps - 1)/(cosh(n lambda) - 1))`, an upper
/// bound for every remaining power whatever its rotation, cannot beat the
/// running maximum. Ties go to the smallest power; the elliptic generator
/// loses ties to any power.
pub fn tube_radius(torus: &ModelSolidTorus, eps: f64) -> Result<TubeRadiusResult> {
    check_eps("eps", eps)?;
    let eps_excess = cosh_minus_one(eps);
    // one extra step absorbs rounding in eps / lambda
    let n_limit = (eps / torus.lambda).floor() as u64 + 1;

    let mut best = ExtendedLength::NEG_INF;
    let mut best_n = None;
    for n in 1..=n_limit {
        let translation = n as f64 * torus.lambda;
        let lambda_excess = cosh_minus_one(translation);
        if best.is_finite() {
            let ceiling = arccosh_sqrt_from_excess((eps_excess - lambda_excess) / lambda_excess);
            if ceiling.value() <= best.value() + TIE_TOL {
                break;
            }
        }
        let r = trad_unchecked(translation, torus.reduced_rotation(n), eps);
        if r.is_finite() && (best_n.is_none() || r.value() > best.value() + TIE_TOL) {
            best = r;
            best_n = Some(n);
        }
    }

    let mut result = TubeRadiusResult {
        radius: best,
        realizer: best_n.map(Realizer::Power),
    };
    if torus.is_singular() {
        let e = elliptic_trad(torus.alpha, eps);
        if result.realizer.is_none() || e.value() > best.value() + TIE_TOL {
            result = TubeRadiusResult {
                radius: e,
                realizer: Some(Realizer::Elliptic),
            };
        }
    }
    Ok(result)
}

/// The power for `eps`: which deck transformation realizes the tube radius.
pub fn power_for(torus: &ModelSolidTorus, eps: f64) -> Result<Realizer> {
    tube_radius(torus, eps)?
        .realizer
        .ok_or(Error::EmptyThinPart(eps))
}

/// Finite tube radius, or `EmptyThinPart`.
pub(crate) fn finite_radius(torus: &ModelSolidTorus, eps: f64) -> Result<(f64, Realizer)> {
    let res = tube_radius(torus, eps)?;
    match (res.radius.as_finite(), res.realizer) {
        (Some(r), Some(k)) => Ok((r, k)),
        _ => Err(Error::EmptyThinPart(eps)),
    }
}

/// Distance `r(eps) - r(delta)` between the boundaries of the `delta`- and
/// `eps`-thin tubes.
pub fn tube_distance(torus: &ModelSolidTorus, delta: f64, eps: f64) -> Result<f64> {
    check_eps("delta", delta)?;
    check_eps("eps", eps)?;
    if delta > eps {
        return Err(Error::BadDeltaEps { delta, eps });
    }
    let (r_delta, _) = finite_radius(torus, delta)?;
    let (r_eps, _) = finite_radius(torus, eps)?;
    Ok(r_eps - r_delta)
}

/// Distance between the `delta`-thin and `eps`-thick parts of a horocusp.
pub fn cusp_distance(delta: f64, eps: f64) -> Result<f64> {
    check_eps("delta", delta)?;
    check_eps("eps", eps)?;
    if delta > eps {
        return Err(Error::BadDeltaEps { delta, eps });
    }
    Ok(((0.5 * eps).sinh() / (0.5 * delta).sinh()).ln())
}

/// Displacement of a point at radius `r` under an isometry with the given
/// translation and rotation, from `cosh d = cosh(dz) cosh^2 r - cos(dt) sinh^2 r`
/// with `|dt|` clamped at π.
/// Plain form, independent of the split used by `trad`.
fn oracle_displacement(r: f64, dzeta: f64, dtheta: f64) -> f64 {
    let c = r.cosh();
    let s = r.sinh();
    let cos_t = dtheta.abs().min(PI).cos();
    let cosh_d = dzeta.cosh() * c * c - cos_t * s * s;
    cosh_d.max(1.0).acosh()
}

/// Twice the injectivity radius at distance `r` from the core: the minimum
/// displacement over all nontrivial deck transformations.
///
/// Powers are searched until `n lambda` exceeds the running minimum, since
/// the `n`-th power moves every point at least `n lambda`.
pub fn injrad_at_radius(torus: &ModelSolidTorus, r: f64) -> Result<f64> {
    if !(r >= 0.0) || !r.is_finite() {
        return Err(invalid("r", r, "radius must be finite and nonnegative"));
    }
    let mut best = if torus.is_singular() {
        oracle_displacement(r, 0.0, torus.alpha)
    } else {
        f64::INFINITY
    };
    let mut n: u64 = 1;
    while (n as f64) * torus.lambda < best {
        let d = oracle_displacement(r, n as f64 * torus.lambda, torus.reduced_rotation(n));
        best = best.min(d);
        n += 1;
    }
    Ok(best)
}

/// Tube radius by bisection on `r -> injrad_at_radius(r)`, which is strictly
/// increasing. Independent of [`tube_radius`].
pub fn tube_radius_oracle(torus: &ModelSolidTorus, eps: f64) -> Result<ExtendedLength> {
    check_eps("eps", eps)?;
    if injrad_at_radius(torus, 0.0)? > eps {
        return Ok(ExtendedLength::NEG_INF);
    }
    let mut hi = ORACLE_BRACKET_START;
    while injrad_at_radius(torus, hi)? <= eps && hi < ORACLE_BRACKET_CAP {
        hi *= 2.0;
    }
    let mut lo = 0.0;
    while hi - lo > ORACLE_TOL {
        let mid = 0.5 * (lo + hi);
        if injrad_at_radius(torus, mid)? <= eps {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    Ok(ExtendedLength::finite(0.5 * (lo + hi)))
}
