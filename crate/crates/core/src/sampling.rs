//! Seeded random parameter draws for verification campaigns.
//!
//! Sample `i` of a campaign with seed `s` always comes from ChaCha stream
//! `i` keyed by `s`, so results do not depend on how samples are split
//! across threads.

use std::f64::consts::PI;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::tube::{ModelSolidTorus, TWO_PI};

/// Smallest core length drawn by [`bounds_case`].
pub const LAMBDA_FLOOR: f64 = 1e-6;

/// Generator for sample `index` of the campaign keyed by `seed`.
pub fn rng_for(seed: u64, index: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(index);
    rng
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct BoundsCase {
    pub torus: ModelSolidTorus,
    pub delta: f64,
    pub eps: f64,
}

/// Either 2π or a uniform cone angle in `[0.01, 2π)`, with equal odds.
pub fn cone_angle<R: Rng>(rng: &mut R) -> f64 {
    if rng.gen_bool(0.5) {
        TWO_PI
    } else {
        rng.gen_range(0.01..TWO_PI)
    }
}

/// `(delta, eps)` uniform on the triangle `0 < delta < eps <= eps_max`.
pub fn delta_eps<R: Rng>(rng: &mut R, eps_max: f64) -> (f64, f64) {
    loop {
        let a = rng.gen_range(0.0..=eps_max);
        let b = rng.gen_range(0.0..=eps_max);
        let (delta, eps) = if a < b { (a, b) } else { (b, a) };
        if delta > 0.0 && delta < eps {
            return (delta, eps);
        }
    }
}

/// A torus and tube pair inside the lower-bound hypotheses: log-uniform
/// `lambda` in `[1e-6, delta]`, uniform `tau` in `[-π, π)`, and cone angle
/// from [`cone_angle`].
pub fn bounds_case<R: Rng>(rng: &mut R, eps_max: f64) -> BoundsCase {
    let (delta, eps) = delta_eps(rng, eps_max);
    let lo = LAMBDA_FLOOR.min(delta);
    let lambda = if lo < delta {
        (rng.gen_range(lo.ln()..=delta.ln())).exp().min(delta)
    } else {
        delta
    };
    let tau = rng.gen_range(-PI..PI);
    let alpha = cone_angle(rng);
    let torus = ModelSolidTorus::new(alpha, lambda, tau).expect("sampled parameters are in range");
    BoundsCase { torus, delta, eps }
}

/// A torus with `lambda` in `(0, 0.3]` and `eps` in `(lambda, 0.5]`.
pub fn radius_case<R: Rng>(rng: &mut R) -> (ModelSolidTorus, f64) {
    let lambda = 0.3 * (1.0 - rng.gen::<f64>());
    let tau = rng.gen_range(-PI..=PI);
    let alpha = cone_angle(rng);
    let eps = loop {
        let e = rng.gen_range(lambda..=0.5);
        if e > lambda {
            break e;
        }
    };
    let torus = ModelSolidTorus::new(alpha, lambda, tau).expect("sampled parameters are in range");
    (torus, eps)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn streams_are_reproducible_and_distinct() {
        let a: f64 = rng_for(42, 7).gen();
        let b: f64 = rng_for(42, 7).gen();
        let c: f64 = rng_for(42, 8).gen();
        assert_eq!(a, b);
        assert_ne!(a, c);
    }

    #[test]
    fn bounds_cases_respect_hypotheses() {
        for i in 0..2000 {
            let case = bounds_case(&mut rng_for(1, i), 0.3);
            assert!(case.delta > 0.0 && case.delta < case.eps && case.eps <= 0.3);
            assert!(case.torus.lambda() <= case.delta);
            assert!(case.torus.alpha() > 0.0 && case.torus.alpha() <= TWO_PI);
        }
    }

    #[test]
    fn radius_cases_have_nonempty_thin_part() {
        for i in 0..2000 {
            let (t, eps) = radius_case(&mut rng_for(3, i));
            assert!(t.lambda() > 0.0 && t.lambda() <= 0.3 && eps > t.lambda() && eps <= 0.5);
        }
    }
}
