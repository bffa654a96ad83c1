//! Analytic side: densities, CDFs and Cauchy transforms of the closed-form laws,
//! R-transforms, and residuals of the characteristic relation and of the evolution
//! equations satisfied by `G_{F_a^t µ}`.

use std::f64::consts::PI;
use std::io::Write;

use num_complex::Complex64;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::measures::{closed_form_power, ContinuousPart, ExtendedMeasure, Family, FamilyKind};
use crate::point::ExtendedPoint;
use crate::rational::{self, Rational};

/// Denominators smaller than this are treated as poles.
const POLE_EPS: f64 = 1e-12;

fn mp_edges(lambda: f64) -> (f64, f64) {
    let r = lambda.sqrt();
    ((1.0 - r).powi(2), (1.0 + r).powi(2))
}

/// Marchenko–Pastur density `√((x − λ₋)(λ₊ − x)) / (2πx)` on `[λ₋, λ₊]`, `λ± = (1 ± √λ)²`.
pub fn mp_density(lambda: f64, x: f64) -> Result<f64> {
    if !(lambda >= 1.0) {
        return Err(Error::InvalidParameter(format!("free Poisson intensity {lambda} < 1 has an atom at 0")));
    }
    let (lo, hi) = mp_edges(lambda);
    if x <= lo || x >= hi || x <= 0.0 {
        return Ok(0.0);
    }
    Ok(((x - lo) * (hi - x)).sqrt() / (2.0 * PI * x))
}

/// CDF at angle `θ`, where `x = m − r cos θ`, `m = 1 + λ`, `r = 2√λ`.
fn mp_cdf_theta(lambda: f64, theta: f64) -> f64 {
    let s = lambda.sqrt();
    let (m, r) = (1.0 + lambda, 2.0 * s);
    let half = theta / 2.0;
    // ∫ dθ / (m − r cos θ) = (2/|λ−1|) atan(√((m+r)/(m−r)) tan(θ/2)), written with atan2
    let angle = ((1.0 + s) * half.sin()).atan2((s - 1.0).abs() * half.cos());
    (r * theta.sin() + m * theta - 2.0 * (lambda - 1.0).abs() * angle) / (2.0 * PI)
}

/// Closed-form Marchenko–Pastur CDF for `λ ≥ 1`.
pub fn mp_cdf(lambda: f64, x: f64) -> f64 {
    let (lo, hi) = mp_edges(lambda);
    if x <= lo {
        return 0.0;
    }
    if x >= hi {
        return 1.0;
    }
    let (m, r) = (1.0 + lambda, 2.0 * lambda.sqrt());
    let theta = ((m - x) / r).clamp(-1.0, 1.0).acos();
    mp_cdf_theta(lambda, theta).clamp(0.0, 1.0)
}

/// Inverse of [`mp_cdf`] by bisection in the angle variable.
pub fn mp_quantile(lambda: f64, u: f64) -> f64 {
    let (m, r) = (1.0 + lambda, 2.0 * lambda.sqrt());
    if u <= 0.0 {
        return m - r;
    }
    if u >= 1.0 {
        return m + r;
    }
    let (mut lo, mut hi) = (0.0, PI);
    for _ in 0..80 {
        let mid = 0.5 * (lo + hi);
        if mp_cdf_theta(lambda, mid) < u {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    m - r * (0.5 * (lo + hi)).cos()
}

/// `G(z) = (z + 1 − λ − √(z − λ₋)·√(z − λ₊)) / (2z)`, extended to the lower half-plane by
/// `G(z̄) = conj G(z)`.
pub fn mp_resolvent(lambda: f64, z: Complex64) -> Complex64 {
    if z.im < 0.0 {
        return mp_resolvent(lambda, z.conj()).conj();
    }
    let (lo, hi) = mp_edges(lambda);
    let root = (z - lo).sqrt() * (z - hi).sqrt();
    (z + 1.0 - lambda - root) / (2.0 * z)
}

pub fn cauchy_density(x: f64) -> f64 {
    1.0 / (PI * (1.0 + x * x))
}

/// `1/(z + i)` on the upper half-plane, `1/(z − i)` below.
pub fn cauchy_resolvent(z: Complex64) -> Complex64 {
    let i = Complex64::i();
    if z.im >= 0.0 {
        1.0 / (z + i)
    } else {
        1.0 / (z - i)
    }
}

/// `G_µ(z) = ∫ (z − x)^{-1} dµ(x)`; an atom at `∞` contributes nothing.
pub fn cauchy_transform(mu: &ExtendedMeasure, z: Complex64) -> Result<Complex64> {
    if z.im == 0.0 {
        return Err(Error::RealEvaluationPoint);
    }
    let mut g: Complex64 =
        mu.atoms().iter().filter_map(|(p, w)| p.to_f64().map(|x| rational::to_f64(w) / (z - x))).sum();
    let cw = rational::to_f64(&mu.continuous_weight());
    g += match mu.part() {
        ContinuousPart::None => Complex64::new(0.0, 0.0),
        ContinuousPart::Family(f) => cw * f.cauchy_transform(z),
        ContinuousPart::Empirical(s) => cw * s.iter().map(|&x| 1.0 / (z - x)).sum::<Complex64>() / s.len() as f64,
    };
    Ok(g)
}

/// `R_{π_λ}(z) = λ / (1 − z)`.
pub fn r_free_poisson(lambda: f64, z: Complex64) -> Result<Complex64> {
    let den = 1.0 - z;
    if den.norm() < POLE_EPS {
        return Err(Error::Pole(format!("R_π_{lambda} at z = 1")));
    }
    Ok(lambda / den)
}

/// R-transform of a decorated family: `R_{Dil_d µ}(z) = d·R_µ(dz)` and a shift by `c` adds `c`.
/// For Cauchy laws this is the constant `c − i|d|` valid near the upper half-plane.
pub fn r_transform(f: &Family, z: Complex64) -> Result<Complex64> {
    let c = rational::to_f64(&f.shift);
    let d = rational::to_f64(&f.dilate);
    match &f.kind {
        FamilyKind::FreePoisson { lambda } => Ok(c + d * r_free_poisson(rational::to_f64(lambda), d * z)?),
        FamilyKind::CauchyStd => Ok(Complex64::new(c, -d.abs())),
    }
}

fn closed_family(mu: &ExtendedMeasure, a: &ExtendedPoint, t: &Rational) -> Result<Family> {
    let out = closed_form_power(mu, a, t)?
        .ok_or_else(|| Error::InvalidParameter(format!("no closed form for F_{a}^{} here", rational::format(t))))?;
    out.as_family().cloned().ok_or_else(|| Error::InvalidParameter("closed form is not a single family".into()))
}

/// `|R_a(tξ₀ + (1 − t)/(a − R_µ(ξ₀)), t) − R_µ(ξ₀)|` where `R_a(·, t)` is the R-transform of
/// `F_a^t µ`, for a free Poisson law `µ` shifted to the pole `a`.
pub fn characteristic_residual(mu: &Family, a: &Rational, t: &Rational, xi0: f64) -> Result<f64> {
    if mu.is_cauchy() || &mu.shift != a {
        return Err(Error::InvalidParameter("characteristic check needs free Poisson shifted to the pole".into()));
    }
    let measure = ExtendedMeasure::from_family(mu.clone());
    let powered = closed_family(&measure, &ExtendedPoint::Finite(a.clone()), t)?;
    let r0 = r_transform(mu, Complex64::new(xi0, 0.0))?;
    let gap = rational::to_f64(a) - r0;
    if gap.norm() < POLE_EPS {
        return Err(Error::Pole(format!("a − R_µ(ξ₀) vanishes at ξ₀ = {xi0}")));
    }
    let tf = rational::to_f64(t);
    let y = tf * xi0 + (1.0 - tf) / gap;
    Ok((r_transform(&powered, y)? - r0).norm())
}

/// Central-difference residual of the evolution equation for `G(z, t) = G_{F_a^t µ}(z)`:
/// `t∂_tG − G − ∂_zG / G` at `a = ∞`, and
/// `t∂_tG − G − (G + (z − a)∂_zG) / (−1 + (z − a)G)` for finite `a`.
pub fn pde_residual_g(mu: &ExtendedMeasure, a: &ExtendedPoint, t: f64, z: Complex64, h: f64) -> Result<f64> {
    if z.im == 0.0 {
        return Err(Error::RealEvaluationPoint);
    }
    if !(h > 0.0) || t - h < 1.0 {
        return Err(Error::InvalidParameter("need h > 0 and t − h ≥ 1".into()));
    }
    let g_at = |zz: Complex64, tt: f64| -> Result<Complex64> {
        let f = closed_family(mu, a, &rational::from_f64(tt)?)?;
        Ok(f.cauchy_transform(zz))
    };
    let g = g_at(z, t)?;
    let dt = (g_at(z, t + h)? - g_at(z, t - h)?) / (2.0 * h);
    let dz = (g_at(z + h, t)? - g_at(z - h, t)?) / (2.0 * h);
    let rhs = match a.to_f64() {
        None => {
            if g.norm() < POLE_EPS {
                return Err(Error::Pole("G vanishes".into()));
            }
            g + dz / g
        }
        Some(af) => {
            let den = -1.0 + (z - af) * g;
            if den.norm() < POLE_EPS {
                return Err(Error::Pole("−1 + (z − a)G vanishes".into()));
            }
            g + (g + (z - af) * dz) / den
        }
    };
    Ok((t * dt - rhs).norm())
}

/// One row of a residual sweep.
#[derive(Clone, Debug, Serialize)]
pub struct ResidualRow {
    pub family: String,
    pub lambda: Option<f64>,
    pub a: String,
    pub t: f64,
    pub z_re: f64,
    pub z_im: f64,
    pub h: f64,
    pub residual: f64,
}

/// Writes rows with header `family,lambda,a,t,z_re,z_im,h,residual`.
pub fn write_residual_csv<W: Write>(out: W, rows: &[ResidualRow]) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    for r in rows {
        w.serialize(r).map_err(|e| Error::Io(e.to_string()))?;
    }
    w.flush()?;
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quad;
    use crate::rational::{frac, int};

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn atoms_and_cauchy() {
        let d0 = ExtendedMeasure::dirac(ExtendedPoint::int(0));
        assert!((cauchy_transform(&d0, c(0.0, 1.0)).unwrap() - c(0.0, -1.0)).norm() < 1e-15);
        let g = cauchy_transform(&ExtendedMeasure::cauchy(), c(0.0, 2.0)).unwrap();
        assert!((g - 1.0 / c(0.0, 3.0)).norm() < 1e-15);
        assert_eq!(cauchy_transform(&d0, c(1.0, 0.0)), Err(Error::RealEvaluationPoint));
        let inf = ExtendedMeasure::dirac(ExtendedPoint::Infinity);
        assert_eq!(cauchy_transform(&inf, c(0.0, 1.0)).unwrap(), c(0.0, 0.0));
    }

    #[test]
    fn mp_resolvent_matches_quadrature() {
        let z = c(5.0, 1.0);
        let (lo, hi) = mp_edges(2.0);
        let q = quad::integrate_complex(|x| mp_density(2.0, x).unwrap() / (z - x), lo, hi, 1e-13);
        assert!((mp_resolvent(2.0, z) - q).norm() < 1e-8);
        let far = c(3e5, 4e5);
        assert!((mp_resolvent(2.0, far) * far - 1.0).norm() < 1e-5);
    }

    #[test]
    fn mp_density_moments() {
        for lambda in [1.0, 2.0, 3.5] {
            let (lo, hi) = mp_edges(lambda);
            let mass = quad::integrate(|x| mp_density(lambda, x).unwrap(), lo, hi, 1e-13);
            let mean = quad::integrate(|x| x * mp_density(lambda, x).unwrap(), lo, hi, 1e-13);
            assert!((mass - 1.0).abs() < 1e-10, "λ = {lambda}");
            assert!((mean - lambda).abs() < 1e-8);
        }
        assert!(mp_density(0.5, 1.0).is_err());
        assert_eq!(mp_density(1.0, 0.0).unwrap(), 0.0);
    }

    #[test]
    fn cauchy_density_values() {
        assert!((cauchy_density(0.0) - 1.0 / PI).abs() < 1e-16);
        assert!((cauchy_density(1.0) - 0.5 / PI).abs() < 1e-16);
        for x in [0.3, 2.0, 7.5] {
            assert_eq!(cauchy_density(x), cauchy_density(-x));
        }
    }

    #[test]
    fn stieltjes_inversion_improves_with_epsilon() {
        let mu = ExtendedMeasure::free_poisson(int(2)).unwrap();
        for x in [0.8, 2.0, 4.0] {
            let err = |eps: f64| {
                let g = cauchy_transform(&mu, c(x, eps)).unwrap();
                (-g.im / PI - mp_density(2.0, x).unwrap()).abs()
            };
            assert!(err(1e-3) < err(1e-2));
        }
        let cm = ExtendedMeasure::cauchy();
        let g = cauchy_transform(&cm, c(0.5, 1e-3)).unwrap();
        assert!((-g.im / PI - cauchy_density(0.5)).abs() < 1e-3);
    }

    #[test]
    fn r_transform_rules() {
        assert!((r_free_poisson(3.0, c(0.0, 0.0)).unwrap() - 3.0).norm() < 1e-15);
        assert!(matches!(r_free_poisson(3.0, c(1.0, 0.0)), Err(Error::Pole(_))));
        // R of Dil_{1/t} π_{tλ−t+1} at y equals (tλ − (t − 1)) / (t − y)
        let (t, lambda) = (3.0, 2.0);
        let f = Family::new(FamilyKind::FreePoisson { lambda: int(4) }, int(0), frac(1, 3)).unwrap();
        let y = c(0.4, 0.1);
        let expected = (t * lambda - (t - 1.0)) / (t - y);
        assert!((r_transform(&f, y).unwrap() - expected).norm() < 1e-14);
        // R_{F^t µ}(z) = R_µ(z / t)
        let mu = ExtendedMeasure::free_poisson(int(2)).unwrap();
        let ft = closed_family(&mu, &ExtendedPoint::Infinity, &int(3)).unwrap();
        let z = c(0.2, -0.3);
        let lhs = r_transform(&ft, z).unwrap();
        let rhs = r_transform(mu.as_family().unwrap(), z / 3.0).unwrap();
        assert!((lhs - rhs).norm() < 1e-14);
    }

    #[test]
    fn r_and_g_are_inverse() {
        let f = Family::new(FamilyKind::FreePoisson { lambda: frac(5, 2) }, int(1), frac(1, 2)).unwrap();
        for z in [c(0.1, 0.05), c(-0.2, 0.1), c(0.05, -0.1)] {
            let w = r_transform(&f, z).unwrap() + 1.0 / z;
            assert!((f.cauchy_transform(w) - z).norm() < 1e-9, "z = {z}");
        }
    }

    #[test]
    fn inversion_pushforward_identity() {
        // G_{T_*µ}(z) = 1/z − G_µ(a + 1/z)/z² for T(x) = 1/(x − a)
        let a = 1;
        let t = crate::mobius::MobiusMap::inversion_at(int(a));
        let mu = ExtendedMeasure::cauchy().with_atom(ExtendedPoint::int(3), &frac(1, 4)).unwrap();
        let pushed = mu.mobius_push(&t).unwrap();
        for z in [c(0.3, 0.7), c(-1.0, 2.0), c(2.0, -0.5)] {
            let lhs = cauchy_transform(&pushed, z).unwrap();
            let rhs = 1.0 / z - cauchy_transform(&mu, a as f64 + 1.0 / z).unwrap() / (z * z);
            assert!((lhs - rhs).norm() < 1e-10);
        }
    }

    #[test]
    fn characteristic_examples() {
        let f = Family::free_poisson(int(2)).unwrap();
        assert_eq!(characteristic_residual(&f, &int(0), &int(1), -0.3).unwrap(), 0.0);
        assert!(characteristic_residual(&f, &int(0), &int(2), -0.3).unwrap() < 1e-10);
        let wrong_pole = characteristic_residual(&f, &int(1), &int(2), -0.3);
        assert!(wrong_pole.is_err());
    }

    #[test]
    fn pde_examples() {
        let h = 1e-4;
        let cm = ExtendedMeasure::cauchy();
        for a in [ExtendedPoint::Infinity, ExtendedPoint::int(0), ExtendedPoint::int(1)] {
            assert!(pde_residual_g(&cm, &a, 2.0, c(0.5, 1.5), h).unwrap() < 1e-6);
        }
        let fp = ExtendedMeasure::free_poisson(int(2)).unwrap();
        assert!(pde_residual_g(&fp, &ExtendedPoint::Infinity, 2.0, c(0.0, 3.0), h).unwrap() < 1e-6);
        assert!(pde_residual_g(&fp, &ExtendedPoint::int(0), 2.0, c(1.0, 2.0), h).unwrap() < 1e-6);
    }

    #[test]
    fn residual_csv_header() {
        let mut buf = Vec::new();
        let row = ResidualRow {
            family: "cauchy".into(),
            lambda: None,
            a: "inf".into(),
            t: 2.0,
            z_re: 0.0,
            z_im: 1.0,
            h: 1e-4,
            residual: 0.0,
        };
        write_residual_csv(&mut buf, &[row]).unwrap();
        let s = String::from_utf8(buf).unwrap();
        assert!(s.starts_with("family,lambda,a,t,z_re,z_im,h,residual\ncauchy,,inf,2"));
    }
}
