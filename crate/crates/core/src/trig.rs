//! Extended-real hyperbolic and circular primitives.
//!
//! Lengths that may be "undefined" (a translation radius for a power that
//! moves every point further than `eps`, or `arccosh` of an argument below
//! one) are carried as [`ExtendedLength`], whose only non-finite value is
//! negative infinity. Max-reductions then discard undefined terms without
//! any branching.

use std::cmp::Ordering;
use std::fmt;
use std::ops::Sub;

use serde::{Serialize, Serializer};

/// Below this magnitude `f_cosh` and `g_cos` switch to their Taylor series.
const SERIES_THRESHOLD: f64 = 1e-4;

/// A nonnegative length, or negative infinity for "no such length".
#[derive(Clone, Copy, Debug, PartialEq, PartialOrd)]
pub struct ExtendedLength(f64);

impl ExtendedLength {
    pub const NEG_INF: ExtendedLength = ExtendedLength(f64::NEG_INFINITY);
    pub const ZERO: ExtendedLength = ExtendedLength(0.0);

    /// Wraps a finite value. NaN is rejected.
    pub fn finite(value: f64) -> Self {
        assert!(value.is_finite(), "finite length expected, got {value}");
        ExtendedLength(value)
    }

    pub fn value(self) -> f64 {
        self.0
    }

    pub fn is_finite(self) -> bool {
        self.0.is_finite()
    }

    pub fn is_neg_inf(self) -> bool {
        self.0 == f64::NEG_INFINITY
    }

    /// The finite value, or `None` for `NEG_INF`.
    pub fn as_finite(self) -> Option<f64> {
        self.is_finite().then_some(self.0)
    }

    pub fn max(self, other: Self) -> Self {
        if other.0 > self.0 {
            other
        } else {
            self
        }
    }

    /// Total order; values are never NaN by construction.
    pub fn total_cmp(&self, other: &Self) -> Ordering {
        self.0.total_cmp(&other.0)
    }
}

impl Sub<f64> for ExtendedLength {
    type Output = ExtendedLength;

    fn sub(self, rhs: f64) -> ExtendedLength {
        if self.is_neg_inf() {
            self
        } else {
            ExtendedLength(self.0 - rhs)
        }
    }
}

impl From<ExtendedLength> for f64 {
    fn from(value: ExtendedLength) -> f64 {
        value.0
    }
}

impl fmt::Display for ExtendedLength {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_neg_inf() {
            f.write_str("-inf")
        } else {
            fmt::Display::fmt(&self.0, f)
        }
    }
}

impl Serialize for ExtendedLength {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        match self.as_finite() {
            Some(v) => serializer.serialize_f64(v),
            None => serializer.serialize_none(),
        }
    }
}

/// `arccosh(x)` with the convention `arccosh(x) = -inf` for `x < 1`.
pub fn arccosh_ext(x: f64) -> ExtendedLength {
    if x.is_nan() || x < 1.0 {
        return ExtendedLength::NEG_INF;
    }
    arccosh_from_excess(x - 1.0)
}

/// `arccosh(1 + u)` for `u >= 0`, accurate as `u -> 0`.
///
/// Callers that can form `u` without cancellation should use this directly
/// instead of `arccosh_ext(1.0 + u)`.
pub fn arccosh_from_excess(u: f64) -> ExtendedLength {
    if u.is_nan() || u < 0.0 {
        return ExtendedLength::NEG_INF;
    }
    if u == f64::INFINITY {
        return ExtendedLength(f64::INFINITY);
    }
    if u > 1e8 {
        // u(u + 2) overflows long before log does
        return ExtendedLength((1.0 + u).ln() + std::f64::consts::LN_2);
    }
    ExtendedLength((u + (u * (u + 2.0)).sqrt()).ln_1p())
}

/// `arccosh(sqrt(1 + u))` for `u >= 0`, without forming `sqrt(1 + u) - 1`
/// by subtraction.
pub fn arccosh_sqrt_from_excess(u: f64) -> ExtendedLength {
    if u.is_nan() || u < 0.0 {
        return ExtendedLength::NEG_INF;
    }
    let root = (1.0 + u).sqrt();
    arccosh_from_excess(u / (root + 1.0))
}

/// The representative of `a` modulo `b` in `[-b/2, b/2)`.
///
/// Panics if `b <= 0`.
pub fn sym_mod(a: f64, b: f64) -> f64 {
    assert!(b > 0.0, "sym_mod modulus must be positive, got {b}");
    let half = 0.5 * b;
    let mut x = a - b * (a / b + 0.5).floor();
    // floor can land one period off when a/b + 1/2 rounds across an integer
    if x >= half {
        x -= b;
    } else if x < -half {
        x += b;
    }
    x
}

/// `(cosh x - 1) / x^2`, equal to `1/2` at `x = 0`.
pub fn f_cosh(x: f64) -> f64 {
    let x = x.abs();
    if x < SERIES_THRESHOLD {
        let x2 = x * x;
        // 1/2! + x^2/4! + x^4/6!
        0.5 + x2 * (1.0 / 24.0 + x2 / 720.0)
    } else {
        // cosh x - 1 = 2 sinh^2(x/2) has no cancellation
        let s = (0.5 * x).sinh();
        2.0 * s * s / (x * x)
    }
}

/// `(1 - cos x) / x^2`, equal to `1/2` at `x = 0`.
pub fn g_cos(x: f64) -> f64 {
    let x = x.abs();
    if x < SERIES_THRESHOLD {
        let x2 = x * x;
        0.5 - x2 * (1.0 / 24.0 - x2 / 720.0)
    } else {
        let s = (0.5 * x).sin();
        2.0 * s * s / (x * x)
    }
}

/// `cosh x - 1` without cancellation.
pub fn cosh_minus_one(x: f64) -> f64 {
    x * x * f_cosh(x)
}

/// `1 - cos x` without cancellation.
pub fn one_minus_cos(x: f64) -> f64 {
    x * x * g_cos(x)
}
