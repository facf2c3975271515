//! Effective bounds on the distance between nested tubes, together with the
//! ingredients that produce them: depth bounds for a single tube, the
//! short-power search on the core, the multiplicative radius gap and the
//! comparison function that fixes the additive constant.

use std::f64::consts::PI;

use serde::Serialize;

use crate::error::{invalid, Error, Result};
use crate::trig::{
    arccosh_ext, arccosh_sqrt_from_excess, cosh_minus_one, one_minus_cos, sym_mod, ExtendedLength,
};
use crate::tube::{finite_radius, ModelSolidTorus, Realizer};

/// Rounded-up packing constant `4π/√3 = 7.2551…` appearing in the lower bound.
pub const PACKING_CONSTANT: f64 = 7.256;

/// Additive constant of the lower bound for `eps <= 0.3`.
pub const R_MIN: f64 = 0.0424;

/// `2 × 0.634`, from comparing flat and hyperbolic lengths on a tube boundary.
pub const LOOP_FACTOR: f64 = 1.268;

/// Largest `eps` covered by the fixed constant [`R_MIN`].
pub const MAIN_EPS_MAX: f64 = 0.3;

/// Largest `eps_max` for which [`r_min_for`] is valid.
pub const GENERAL_EPS_MAX: f64 = 1.475;

/// Core lengths up to this value always have a short power.
pub const CGM_LAMBDA_MAX: f64 = 2.97;

/// Absolute slack used for every certificate comparison.
pub const CERT_TOL: f64 = 1e-9;

const GRID_POINTS: usize = 10_000;
const GOLDEN_TOL: f64 = 1e-12;

/// `4π/√3`, the unrounded packing constant.
pub fn sharp_packing_constant() -> f64 {
    4.0 * PI / 3f64.sqrt()
}

/// `2π/√3`, the short-power threshold per unit core length.
pub fn cgm_constant() -> f64 {
    2.0 * PI / 3f64.sqrt()
}

/// The `arccosh(eps / sqrt(7.256 delta)) - r_min` term; `NEG_INF` when the
/// argument is below one.
pub fn log_lower_term(delta: f64, eps: f64, r_min: f64) -> ExtendedLength {
    arccosh_ext(eps / (PACKING_CONSTANT * delta).sqrt()) - r_min
}

/// Lower bound on `d(delta, eps)`, the larger of `(eps - delta)/2` and the
/// logarithmic term. An undefined logarithmic term never wins.
pub fn lower_bound(delta: f64, eps: f64, r_min: f64) -> f64 {
    let linear = 0.5 * (eps - delta);
    log_lower_term(delta, eps, r_min)
        .max(ExtendedLength::finite(linear))
        .value()
}

/// `arccosh sqrt((cosh eps - 1)/(cosh delta - 1))`, sharp for the torus
/// `(2π, delta, 0)`.
pub fn upper_bound(delta: f64, eps: f64) -> f64 {
    let de = cosh_minus_one(delta);
    arccosh_sqrt_from_excess((cosh_minus_one(eps) - de) / de).value()
}

/// Comparison function `j(delta, eps)` on `0 <= delta <= eps^2/7.256`.
pub fn j_function(delta: f64, eps: f64) -> Result<f64> {
    if !(eps > 0.0) {
        return Err(invalid("eps", eps, "must be positive"));
    }
    if !(delta >= 0.0) {
        return Err(invalid("delta", delta, "must be nonnegative"));
    }
    let a = delta / PACKING_CONSTANT;
    let mut inner = a - delta * delta / (eps * eps);
    if inner < 0.0 {
        // the boundary delta = eps^2/7.256 may round to a tiny negative
        if inner < -1e-15 * a.max(f64::MIN_POSITIVE) {
            return Err(invalid("delta", delta, "exceeds eps^2/7.256"));
        }
        inner = 0.0;
    }
    Ok((a.sqrt() + inner.sqrt()) / LOOP_FACTOR)
}

/// Maximizer of `f` on `[a, b]` for a unimodal `f`.
fn golden_section_max(f: impl Fn(f64) -> f64, mut a: f64, mut b: f64, tol: f64) -> f64 {
    let inv_phi = (5f64.sqrt() - 1.0) / 2.0;
    let mut c = b - inv_phi * (b - a);
    let mut d = a + inv_phi * (b - a);
    let mut fc = f(c);
    let mut fd = f(d);
    while b - a > tol {
        if fc >= fd {
            b = d;
            d = c;
            fd = fc;
            c = b - inv_phi * (b - a);
            fc = f(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + inv_phi * (b - a);
            fd = f(d);
        }
    }
    0.5 * (a + b)
}

/// Location and value of the maximum of `j(., eps_max)` on its arc.
///
/// Errors unless a finite-difference scan finds exactly one interior
/// critical point, which is what makes golden-section search valid.
pub fn j_maximum(eps_max: f64) -> Result<(f64, f64)> {
    if !(eps_max > 0.0 && eps_max <= GENERAL_EPS_MAX) {
        return Err(invalid("eps_max", eps_max, "must lie in (0, 1.475]"));
    }
    let end = eps_max * eps_max / PACKING_CONSTANT;
    let j = |d: f64| j_function(d.clamp(0.0, end), eps_max).unwrap_or(f64::NEG_INFINITY);

    let values: Vec<f64> = (0..=GRID_POINTS)
        .map(|i| j(end * i as f64 / GRID_POINTS as f64))
        .collect();
    let mut sign_changes = 0;
    let mut prev_sign = 0.0;
    for w in values.windows(2) {
        let diff = w[1] - w[0];
        if diff == 0.0 {
            continue;
        }
        let s = diff.signum();
        if prev_sign != 0.0 && s != prev_sign {
            sign_changes += 1;
        }
        prev_sign = s;
    }
    if sign_changes != 1 {
        return Err(Error::CriticalPointCount(sign_changes));
    }
    let arg = golden_section_max(j, 0.0, end, GOLDEN_TOL);
    Ok((arg, j(arg)))
}

/// Additive constant `arcsinh(j_max)` for the lower bound on `eps <= eps_max`.
pub fn r_min_for(eps_max: f64) -> Result<f64> {
    Ok(j_maximum(eps_max)?.1.asinh())
}

/// The additive constant a certificate uses: `0.0424` up to `eps_max = 0.3`,
/// and never less than that beyond.
pub fn theorem_r_min(eps_max: f64) -> Result<f64> {
    if !(eps_max > 0.0 && eps_max <= GENERAL_EPS_MAX) {
        return Err(invalid("eps_max", eps_max, "must lie in (0, 1.475]"));
    }
    if eps_max <= MAIN_EPS_MAX {
        Ok(R_MIN)
    } else {
        Ok(R_MIN.max(r_min_for(eps_max)?))
    }
}

/// Lower bound `eps / sqrt(7.256 lambda)` for `cosh r(eps)`.
pub fn depth_lower_bound(eps: f64, lambda: f64) -> Result<f64> {
    if !(lambda > 0.0 && lambda <= CGM_LAMBDA_MAX) {
        return Err(invalid("lambda", lambda, "must lie in (0, 2.97]"));
    }
    if !(eps > 0.0) {
        return Err(invalid("eps", eps, "must be positive"));
    }
    Ok(eps / (PACKING_CONSTANT * lambda).sqrt())
}

/// Lower bound for `sinh 2r(eps)` in a singular torus, from disk packing on
/// the boundary torus: `√3 eps^2 / (alpha lambda)`.
pub fn singular_area_bound(alpha: f64, lambda: f64, eps: f64) -> f64 {
    3f64.sqrt() * eps * eps / (alpha * lambda)
}

/// Lower bound for `cosh^2 r(eps)` in a nonsingular torus: `√3 eps^2 / (4π lambda)`.
pub fn nonsingular_depth_bound(lambda: f64, eps: f64) -> f64 {
    3f64.sqrt() * eps * eps / (4.0 * PI * lambda)
}

/// Lower bound on `d(delta, eps)` when `r(delta) <= r_max`.
pub fn shallow_lower_bound(delta: f64, eps: f64, r_max: f64) -> ExtendedLength {
    log_lower_term(delta, eps, r_max)
}

/// Lower bound on `d(delta, eps)` when `r(delta) >= r_min` and `delta <= 0.3`.
pub fn deep_lower_bound(delta: f64, eps: f64, r_min: f64) -> f64 {
    (eps / delta * LOOP_FACTOR * r_min.sinh()).ln() - r_min
}

/// Smallest `m >= 1` with `cosh(m lambda) - cos(m tau) <= (2π/√3) lambda`.
///
/// Beyond `m_max = ceil(arccosh(1 + (2π/√3) lambda)/lambda) + 1` the
/// translation part alone exceeds the threshold, so failure there is a hard
/// error.
pub fn cgm_power_search(lambda: f64, tau: f64) -> Result<u64> {
    if !(lambda > 0.0 && lambda <= CGM_LAMBDA_MAX) {
        return Err(invalid("lambda", lambda, "must lie in (0, 2.97]"));
    }
    if !tau.is_finite() {
        return Err(invalid("tau", tau, "must be finite"));
    }
    let threshold = cgm_constant() * lambda;
    let m_max = ((1.0 + threshold).acosh() / lambda).ceil() as u64 + 1;
    (1..=m_max)
        .find(|&m| {
            let m_f = m as f64;
            cosh_minus_one(m_f * lambda) + one_minus_cos(sym_mod(m_f * tau, 2.0 * PI)) <= threshold
        })
        .ok_or(Error::PowerSearchExhausted { lambda, tau, m_max })
}

/// `(cosh r(eps)/cosh r(delta), sqrt((cosh eps - 1)/(cosh delta - 1)))`;
/// the first never exceeds the second.
pub fn mult_gap_bound(torus: &ModelSolidTorus, delta: f64, eps: f64) -> Result<(f64, f64)> {
    if !(delta > 0.0 && delta < eps) {
        return Err(Error::BadDeltaEps { delta, eps });
    }
    let (r_delta, _) = finite_radius(torus, delta)?;
    let (r_eps, _) = finite_radius(torus, eps)?;
    let ratio = r_eps.cosh() / r_delta.cosh();
    let bound = (cosh_minus_one(eps) / cosh_minus_one(delta)).sqrt();
    Ok((ratio, bound))
}

/// Actual tube distance alongside both bounds.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct BoundsCertificate {
    pub actual: f64,
    pub lower_linear: f64,
    pub lower_log: ExtendedLength,
    pub upper: f64,
    pub lower_ok: bool,
    pub upper_ok: bool,
    pub realizer_delta: Realizer,
    pub realizer_eps: Realizer,
}

impl BoundsCertificate {
    pub fn lower(&self) -> f64 {
        ExtendedLength::finite(self.lower_linear)
            .max(self.lower_log)
            .value()
    }

    /// `actual - lower`; negative means a violation beyond rounding.
    pub fn lower_margin(&self) -> f64 {
        self.actual - self.lower()
    }

    /// `upper - actual`.
    pub fn upper_margin(&self) -> f64 {
        self.upper - self.actual
    }

    pub fn ok(&self) -> bool {
        self.lower_ok && self.upper_ok
    }

    /// Recomputes both flags from the numeric fields.
    pub fn with_flags(mut self) -> Self {
        self.lower_ok = self.actual >= self.lower() - CERT_TOL;
        self.upper_ok = self.actual <= self.upper + CERT_TOL;
        self
    }
}

/// Certificate for `(torus, delta, eps)` with additive constant `r_min`,
/// without checking the hypotheses on `lambda` and `eps`.
pub fn evaluate_bounds(
    torus: &ModelSolidTorus,
    delta: f64,
    eps: f64,
    r_min: f64,
) -> Result<BoundsCertificate> {
    if !(delta > 0.0 && delta < eps) {
        return Err(Error::BadDeltaEps { delta, eps });
    }
    let (r_delta, realizer_delta) = finite_radius(torus, delta)?;
    let (r_eps, realizer_eps) = finite_radius(torus, eps)?;
    Ok(BoundsCertificate {
        actual: r_eps - r_delta,
        lower_linear: 0.5 * (eps - delta),
        lower_log: log_lower_term(delta, eps, r_min),
        upper: upper_bound(delta, eps),
        lower_ok: false,
        upper_ok: false,
        realizer_delta,
        realizer_eps,
    }
    .with_flags())
}

/// Certificate under the hypotheses
/// `0 < delta < eps <= eps_max <= 1.475` and `lambda <= delta`.
pub fn check_bounds(
    torus: &ModelSolidTorus,
    delta: f64,
    eps: f64,
    eps_max: f64,
) -> Result<BoundsCertificate> {
    if !(delta > 0.0 && delta < eps) {
        return Err(Error::BadDeltaEps { delta, eps });
    }
    let r_min = theorem_r_min(eps_max)?;
    if eps > eps_max {
        return Err(Error::EpsAboveMax { eps, eps_max });
    }
    if torus.lambda() > delta {
        return Err(Error::CoreLongerThanDelta {
            lambda: torus.lambda(),
            delta,
        });
    }
    evaluate_bounds(torus, delta, eps, r_min)
}
