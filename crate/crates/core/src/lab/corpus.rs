//! Seeded random inputs for the exact identity suites.

use num_traits::Zero;
use rand::Rng;

use crate::point::ExtendedPoint;
use crate::poly::FormalPolynomial;
use crate::rational::{frac, Rational};

/// Uniform rational in `[-range, range]` with denominator at most `max_den`.
pub fn random_rational<R: Rng>(rng: &mut R, range: i64, max_den: i64) -> Rational {
    let den = rng.gen_range(1..=max_den);
    frac(rng.gen_range(-range * den..=range * den), den)
}

/// Random rational coefficients with non-zero leading coefficient (not necessarily real-rooted).
pub fn random_polynomial<R: Rng>(rng: &mut R, degree: usize) -> FormalPolynomial {
    let mut coeffs: Vec<Rational> = (0..=degree).map(|_| random_rational(rng, 9, 6)).collect();
    while coeffs[degree].is_zero() {
        coeffs[degree] = random_rational(rng, 9, 6);
    }
    FormalPolynomial::from_coeffs(&coeffs).expect("non-empty coefficients")
}

/// `degree` distinct rational roots in `[-range, range]` with bounded denominators, sorted.
pub fn random_roots<R: Rng>(rng: &mut R, degree: usize, range: i64, max_den: i64) -> Vec<Rational> {
    let mut roots: Vec<Rational> = Vec::with_capacity(degree);
    while roots.len() < degree {
        let r = random_rational(rng, range, max_den);
        if !roots.contains(&r) {
            roots.push(r);
        }
    }
    roots.sort();
    roots
}

/// A finite point or, with probability `p_inf`, the point at infinity.
pub fn random_point<R: Rng>(rng: &mut R, p_inf: f64) -> ExtendedPoint {
    if rng.gen_bool(p_inf) {
        ExtendedPoint::Infinity
    } else {
        ExtendedPoint::Finite(random_rational(rng, 5, 4))
    }
}
