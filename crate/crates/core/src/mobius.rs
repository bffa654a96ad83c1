//! Fractional-linear maps `z ↦ (az + b) / (cz + d)` with rational entries.

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::point::ExtendedPoint;
use crate::rational::{self, Rational};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MobiusMap {
    a: Rational,
    b: Rational,
    c: Rational,
    d: Rational,
}

impl MobiusMap {
    pub fn new(a: Rational, b: Rational, c: Rational, d: Rational) -> Result<Self> {
        if (&a * &d - &b * &c).is_zero() {
            return Err(Error::SingularMobius);
        }
        Ok(MobiusMap { a, b, c, d })
    }

    pub fn identity() -> Self {
        MobiusMap { a: Rational::one(), b: Rational::zero(), c: Rational::zero(), d: Rational::one() }
    }

    /// `z ↦ factor · z`.
    pub fn dilation(factor: Rational) -> Result<Self> {
        if factor.is_zero() {
            return Err(Error::InvalidParameter("dilation by 0".into()));
        }
        Ok(MobiusMap { a: factor, b: Rational::zero(), c: Rational::zero(), d: Rational::one() })
    }

    /// `z ↦ z + offset`.
    pub fn shift(offset: Rational) -> Self {
        MobiusMap { a: Rational::one(), b: offset, c: Rational::zero(), d: Rational::one() }
    }

    /// `z ↦ 1 / (z - pole)`, the map sending `pole` to infinity.
    pub fn inversion_at(pole: Rational) -> Self {
        MobiusMap { a: Rational::zero(), b: Rational::one(), c: Rational::one(), d: -pole }
    }

    /// A map sending `point` to infinity (the identity when `point` already is infinity).
    pub fn sending_to_infinity(point: &ExtendedPoint) -> Self {
        match point {
            ExtendedPoint::Finite(x) => Self::inversion_at(x.clone()),
            ExtendedPoint::Infinity => Self::identity(),
        }
    }

    pub fn entries(&self) -> (&Rational, &Rational, &Rational, &Rational) {
        (&self.a, &self.b, &self.c, &self.d)
    }

    pub fn determinant(&self) -> Rational {
        &self.a * &self.d - &self.b * &self.c
    }

    /// Fixes infinity, i.e. `c = 0`.
    pub fn is_affine(&self) -> bool {
        self.c.is_zero()
    }

    pub fn inverse(&self) -> Self {
        MobiusMap { a: self.d.clone(), b: -self.b.clone(), c: -self.c.clone(), d: self.a.clone() }
    }

    /// `self ∘ other`.
    pub fn compose(&self, other: &MobiusMap) -> Self {
        MobiusMap {
            a: &self.a * &other.a + &self.b * &other.c,
            b: &self.a * &other.b + &self.b * &other.d,
            c: &self.c * &other.a + &self.d * &other.c,
            d: &self.c * &other.b + &self.d * &other.d,
        }
    }

    pub fn apply(&self, z: &ExtendedPoint) -> ExtendedPoint {
        match z {
            ExtendedPoint::Finite(x) => {
                let den = &self.c * x + &self.d;
                if den.is_zero() {
                    ExtendedPoint::Infinity
                } else {
                    ExtendedPoint::Finite((&self.a * x + &self.b) / den)
                }
            }
            ExtendedPoint::Infinity => {
                if self.c.is_zero() {
                    ExtendedPoint::Infinity
                } else {
                    ExtendedPoint::Finite(&self.a / &self.c)
                }
            }
        }
    }

    /// Floating-point evaluation; `None` for the image infinity.
    pub fn apply_f64(&self, x: f64) -> Option<f64> {
        let (a, b, c, d) = self.to_f64_entries();
        let den = c * x + d;
        if den == 0.0 {
            None
        } else {
            Some((a * x + b) / den)
        }
    }

    pub fn to_f64_entries(&self) -> (f64, f64, f64, f64) {
        (rational::to_f64(&self.a), rational::to_f64(&self.b), rational::to_f64(&self.c), rational::to_f64(&self.d))
    }

    /// Equal as maps of the extended line (entries agree up to a common scalar).
    pub fn same_map(&self, other: &MobiusMap) -> bool {
        let lhs = [&self.a, &self.b, &self.c, &self.d];
        let rhs = [&other.a, &other.b, &other.c, &other.d];
        let pivot = lhs.iter().position(|x| !x.is_zero()).unwrap();
        if rhs[pivot].is_zero() {
            return false;
        }
        let k = rhs[pivot] / lhs[pivot];
        lhs.iter().zip(rhs.iter()).all(|(l, r)| &(*l * &k) == *r)
    }
}
