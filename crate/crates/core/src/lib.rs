//! Tube radii and distances between nested tubes in hyperbolic solid tori,
//! singular along the core or not.
//!
//! A model solid torus [`ModelSolidTorus`] is the quotient of the branched
//! cover of hyperbolic space around a geodesic by an elliptic of angle
//! `alpha` and a loxodromic of complex length `lambda + i tau`. The crate
//! computes
//!
//! * the radius `r(eps)` of the `eps`-thin tube and the power of the core
//!   that realizes it ([`tube::tube_radius`]), cross-checked by a bisection
//!   oracle ([`tube::tube_radius_oracle`]);
//! * the distance `d(delta, eps) = r(eps) - r(delta)` between tubes and the
//!   matching distance in a horocusp;
//! * the effective lower and upper bounds on `d(delta, eps)` that depend on
//!   `delta` and `eps` only, packaged as a [`bounds::BoundsCertificate`];
//! * the family of tori that shows the lower bound is sharp up to an
//!   additive constant ([`sharpness`]).
//!
//! ```
//! use tubedist::{tube_radius, ModelSolidTorus, Realizer};
//! use std::f64::consts::PI;
//!
//! let torus = ModelSolidTorus::nonsingular(0.1, PI).unwrap();
//! let res = tube_radius(&torus, 0.201).unwrap();
//! assert_eq!(res.realizer, Some(Realizer::Power(2)));
//! assert!((res.radius.value() - 0.1001).abs() < 1e-4);
//! ```

// negated comparisons reject NaN together with out-of-range values
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod bounds;
pub mod cli;
pub mod error;
pub mod geometry;
pub mod sampling;
pub mod sharpness;
pub mod trig;
pub mod tube;

pub use bounds::{check_bounds, lower_bound, upper_bound, BoundsCertificate};
pub use error::{Error, Result};
pub use geometry::{cyl_distance, trad, AngularBranch, ComplexLength, CylindricalPoint};
pub use trig::{arccosh_ext, sym_mod, ExtendedLength};
pub use tube::{
    cusp_distance, power_for, tube_distance, tube_radius, tube_radius_oracle, ModelSolidTorus,
    Realizer, TubeRadiusResult,
};
