use std::f64::consts::PI;
use std::fmt;

use num_complex::Complex64;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::mobius::MobiusMap;
use crate::rational::{self, Rational};
use crate::transforms;

/// Base laws with closed forms.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum FamilyKind {
    /// Free Poisson (Marchenko–Pastur) law `π_λ`, restricted to `λ ≥ 1` (no atom at 0).
    FreePoisson { lambda: Rational },
    /// Standard Cauchy law `dν = dx / (π(1 + x²))`.
    CauchyStd,
}

/// Law of `dilate · X + shift` with `X` distributed by `kind`, i.e. `Shift_shift Dil_dilate`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Family {
    pub kind: FamilyKind,
    pub shift: Rational,
    pub dilate: Rational,
}

impl Family {
    pub fn new(kind: FamilyKind, shift: Rational, dilate: Rational) -> Result<Self> {
        if dilate.is_zero() {
            return Err(Error::InvalidParameter("dilation factor must be nonzero".into()));
        }
        if let FamilyKind::FreePoisson { lambda } = &kind {
            if *lambda < Rational::one() {
                return Err(Error::InvalidParameter(format!(
                    "free Poisson intensity {} < 1 has an atom at 0 and is unsupported",
                    rational::format(lambda)
                )));
            }
        }
        // Cauchy is symmetric, so its dilation is kept positive
        let dilate = if kind == FamilyKind::CauchyStd { dilate.abs() } else { dilate };
        Ok(Family { kind, shift, dilate })
    }

    pub fn free_poisson(lambda: Rational) -> Result<Self> {
        Self::new(FamilyKind::FreePoisson { lambda }, Rational::zero(), Rational::one())
    }

    pub fn cauchy() -> Self {
        Family { kind: FamilyKind::CauchyStd, shift: Rational::zero(), dilate: Rational::one() }
    }

    pub fn lambda(&self) -> Option<&Rational> {
        match &self.kind {
            FamilyKind::FreePoisson { lambda } => Some(lambda),
            FamilyKind::CauchyStd => None,
        }
    }

    pub fn is_cauchy(&self) -> bool {
        self.kind == FamilyKind::CauchyStd
    }

    /// The same base law with a different intensity, keeping the decoration.
    pub(crate) fn with_lambda(&self, lambda: Rational) -> Result<Self> {
        Self::new(FamilyKind::FreePoisson { lambda }, self.shift.clone(), self.dilate.clone())
    }

    /// `T_*` of this law for affine `T(x) = αx + β`.
    pub fn push_affine(&self, t: &MobiusMap) -> Result<Self> {
        if !t.is_affine() {
            return Err(Error::PushNotRepresentable);
        }
        let (a, b, _, d) = t.entries();
        let alpha = a / d;
        let beta = b / d;
        Self::new(self.kind.clone(), &alpha * &self.shift + beta, alpha * &self.dilate)
    }

    /// Cauchy laws are closed under every Möbius map: `Cauchy(z0)` goes to `Cauchy(T(z0))`,
    /// with `z0 = shift + i·dilate` and the image reflected into the upper half-plane.
    pub(crate) fn push_cauchy(&self, t: &MobiusMap) -> Result<Self> {
        debug_assert!(self.is_cauchy());
        let (a, b, c, d) = t.entries();
        let (x, y) = (&self.shift, &self.dilate);
        // (a z + b) / (c z + d) with z = x + iy, in exact Gaussian rationals
        let (nr, ni) = (a * x + b, a * y);
        let (dr, di) = (c * x + d, c * y);
        let norm = &dr * &dr + &di * &di;
        let re = (&nr * &dr + &ni * &di) / &norm;
        let im = (&ni * &dr - &nr * &di) / &norm;
        Self::new(FamilyKind::CauchyStd, re, im)
    }

    fn base_cdf(&self, x: f64) -> f64 {
        match &self.kind {
            FamilyKind::FreePoisson { lambda } => transforms::mp_cdf(rational::to_f64(lambda), x),
            FamilyKind::CauchyStd => 0.5 + x.atan() / PI,
        }
    }

    fn base_quantile(&self, u: f64) -> f64 {
        match &self.kind {
            FamilyKind::FreePoisson { lambda } => transforms::mp_quantile(rational::to_f64(lambda), u),
            FamilyKind::CauchyStd => (PI * (u - 0.5)).tan(),
        }
    }

    fn affine_f64(&self) -> (f64, f64) {
        (rational::to_f64(&self.shift), rational::to_f64(&self.dilate))
    }

    pub fn cdf(&self, x: f64) -> f64 {
        let (c, d) = self.affine_f64();
        let y = (x - c) / d;
        if d > 0.0 {
            self.base_cdf(y)
        } else {
            1.0 - self.base_cdf(y)
        }
    }

    pub fn quantile(&self, u: f64) -> f64 {
        let (c, d) = self.affine_f64();
        if d > 0.0 {
            c + d * self.base_quantile(u)
        } else {
            c + d * self.base_quantile(1.0 - u)
        }
    }

    pub fn density(&self, x: f64) -> f64 {
        let (c, d) = self.affine_f64();
        let y = (x - c) / d;
        let f = match &self.kind {
            FamilyKind::FreePoisson { lambda } => transforms::mp_density(rational::to_f64(lambda), y).unwrap_or(0.0),
            FamilyKind::CauchyStd => transforms::cauchy_density(y),
        };
        f / d.abs()
    }

    /// `G(z) = (1/d)·G_X((z − c)/d)`.
    pub fn cauchy_transform(&self, z: Complex64) -> Complex64 {
        let (c, d) = self.affine_f64();
        let w = (z - c) / d;
        let g = match &self.kind {
            FamilyKind::FreePoisson { lambda } => transforms::mp_resolvent(rational::to_f64(lambda), w),
            FamilyKind::CauchyStd => transforms::cauchy_resolvent(w),
        };
        g / d
    }

    /// Support as a closed interval, infinite for Cauchy.
    pub fn support(&self) -> (f64, f64) {
        match &self.kind {
            FamilyKind::FreePoisson { lambda } => {
                let r = rational::to_f64(lambda).sqrt();
                let (c, d) = self.affine_f64();
                let (lo, hi) = (c + d * (1.0 - r).powi(2), c + d * (1.0 + r).powi(2));
                (lo.min(hi), lo.max(hi))
            }
            FamilyKind::CauchyStd => (f64::NEG_INFINITY, f64::INFINITY),
        }
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if !self.shift.is_zero() {
            write!(f, "Shift_{} ", rational::format(&self.shift))?;
        }
        if !self.dilate.is_one() {
            write!(f, "Dil_{} ", rational::format(&self.dilate))?;
        }
        match &self.kind {
            FamilyKind::FreePoisson { lambda } => write!(f, "π_{}", rational::format(lambda)),
            FamilyKind::CauchyStd => write!(f, "Cauchy"),
        }
    }
}
