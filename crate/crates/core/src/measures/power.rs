use num_traits::{One, Signed, Zero};

use super::quantile::quantile_roots;
use super::{ExtendedMeasure, Family, FamilyKind};
use crate::error::{Error, Result};
use crate::point::ExtendedPoint;
use crate::poly::{polar_derivative_iter, FormalPolynomial};
use crate::rational::{self, Rational};
use crate::roots::{empirical_distribution, isolate_roots_with_hints};

/// Settings of the polynomial bridge used when no closed form applies: the measure is
/// replaced by the root distribution of a degree-`degree` quantile polynomial, polar
/// differentiated down to degree `round(degree / t)`, and read back from its roots.
#[derive(Clone, Debug)]
pub struct Bridge {
    pub degree: usize,
    /// Root isolation width.
    pub tol: Rational,
}

impl Default for Bridge {
    fn default() -> Self {
        Bridge { degree: 512, tol: Rational::new(1.into(), (1u64 << 30).into()) }
    }
}

/// `(s, t, s′, t′)` with `s′ = 1 + st − s` and `t′ = st / s′`, so that
/// `F_a^s F_b^t = F_b^{s′} F_a^{t′}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CommuteParams {
    pub s: Rational,
    pub t: Rational,
    pub s_prime: Rational,
    pub t_prime: Rational,
}

fn require_power(t: &Rational) -> Result<()> {
    if *t < Rational::one() {
        return Err(Error::InvalidParameter(format!("power {} must be at least 1", rational::format(t))));
    }
    Ok(())
}

pub fn commute_params(s: &Rational, t: &Rational) -> Result<CommuteParams> {
    require_power(s)?;
    require_power(t)?;
    let st = s * t;
    let s_prime = Rational::one() + &st - s;
    let t_prime = &st / &s_prime;
    Ok(CommuteParams { s: s.clone(), t: t.clone(), s_prime, t_prime })
}

/// Predicted mass of `F_a^s µ` at `b ≠ a`: `max{0, 1 − s(1 − µ({b}))}`. Requires `µ({a}) < 1/s`.
pub fn atom_mass(mu: &ExtendedMeasure, a: &ExtendedPoint, s: &Rational, b: &ExtendedPoint) -> Result<Rational> {
    require_power(s)?;
    if a == b {
        return Err(Error::InvalidParameter("atom_mass needs a ≠ b".into()));
    }
    if s * mu.mass_at(a) >= Rational::one() {
        return Err(Error::Hypothesis(format!("µ({{{a}}}) must be below 1/s")));
    }
    let v = Rational::one() - s * (Rational::one() - mu.mass_at(b));
    Ok(if v.is_negative() { Rational::zero() } else { v })
}

/// `F^u` of a closed-form family at `α = ∞`.
fn family_f_power(f: &Family, u: &Rational) -> Result<Family> {
    match &f.kind {
        FamilyKind::CauchyStd => Ok(f.clone()),
        FamilyKind::FreePoisson { lambda } => {
            let g = f.with_lambda(u * lambda)?;
            Family::new(g.kind, g.shift, &g.dilate / u)
        }
    }
}

/// `F_a^u` of a closed-form family at a finite pole, when the pole sits at its shift
/// (free Poisson) or anywhere (Cauchy).
fn family_polar_power(f: &Family, a: &Rational, u: &Rational) -> Option<Result<Family>> {
    match &f.kind {
        FamilyKind::CauchyStd => Some(Ok(f.clone())),
        FamilyKind::FreePoisson { lambda } if &f.shift == a => Some(
            f.with_lambda(u * lambda - u + Rational::one()).and_then(|g| Family::new(g.kind, g.shift, &g.dilate / u)),
        ),
        FamilyKind::FreePoisson { .. } => None,
    }
}

impl Bridge {
    pub fn with_degree(degree: usize) -> Self {
        Bridge { degree, ..Default::default() }
    }

    /// Root distribution of `D_α^{m|N} p` for the quantile polynomial `p` of `mu`.
    pub fn run(&self, mu: &ExtendedMeasure, alpha: &ExtendedPoint, t: &Rational) -> Result<ExtendedMeasure> {
        let n = self.degree;
        let m = rational::round(&(rational::int(n as i64) / t));
        let m: usize = m.try_into().unwrap_or(0);
        if m < 1 {
            return Err(Error::BridgeDegree { degree: n, power: rational::format(t) });
        }
        let q = quantile_roots(mu, n)?;
        let p = FormalPolynomial::from_roots(&q.roots, n)?;
        let d = polar_derivative_iter(&p, alpha, m)?;
        if d.is_zero() {
            // every remaining root collapsed onto α
            return Ok(ExtendedMeasure::dirac(alpha.clone()));
        }
        let mut hints = q.repeated;
        if let Some(a) = alpha.as_finite() {
            hints.push(a.clone());
        }
        let profile = isolate_roots_with_hints(&d, &self.tol, &hints)?;
        empirical_distribution(&profile)
    }

    /// `F^t µ` with the atom at infinity handled by `ts δ_∞ + (1 − ts) F^{(t−ts)/(1−ts)} ν`.
    pub fn f_power(&self, mu: &ExtendedMeasure, t: &Rational) -> Result<ExtendedMeasure> {
        power(mu, &ExtendedPoint::Infinity, t, Some(self)).map(|m| m.expect("bridge always answers"))
    }

    /// `F_a^t µ`: closed forms where available, the polynomial bridge otherwise.
    pub fn polar_power(&self, mu: &ExtendedMeasure, a: &ExtendedPoint, t: &Rational) -> Result<ExtendedMeasure> {
        power(mu, a, t, Some(self)).map(|m| m.expect("bridge always answers"))
    }
}

/// `F^t µ` with the default bridge.
pub fn f_power(mu: &ExtendedMeasure, t: &Rational) -> Result<ExtendedMeasure> {
    Bridge::default().f_power(mu, t)
}

/// `F_a^t µ` with the default bridge.
pub fn polar_power(mu: &ExtendedMeasure, a: &ExtendedPoint, t: &Rational) -> Result<ExtendedMeasure> {
    Bridge::default().polar_power(mu, a, t)
}

/// `F_a^t µ` by closed forms only; `Ok(None)` when the bridge would be needed.
pub fn closed_form_power(mu: &ExtendedMeasure, a: &ExtendedPoint, t: &Rational) -> Result<Option<ExtendedMeasure>> {
    power(mu, a, t, None)
}

fn power(
    mu: &ExtendedMeasure,
    a: &ExtendedPoint,
    t: &Rational,
    bridge: Option<&Bridge>,
) -> Result<Option<ExtendedMeasure>> {
    require_power(t)?;
    if t.is_one() {
        return Ok(Some(mu.clone()));
    }
    let w = mu.mass_at(a);
    if t * &w >= Rational::one() {
        return Ok(Some(ExtendedMeasure::dirac(a.clone())));
    }
    if mu.as_dirac().is_some() {
        return Ok(Some(mu.clone()));
    }
    match a {
        ExtendedPoint::Infinity => {
            let nu = mu.finite_part().expect("mass at ∞ is below 1");
            let ts = t * &w;
            let u = (t - &ts) / (Rational::one() - &ts);
            let real = match nu.as_family() {
                Some(f) => Some(ExtendedMeasure::from_family(family_f_power(f, &u)?)),
                None if nu.as_dirac().is_some() => Some(nu),
                None => match bridge {
                    Some(b) => Some(b.run(&nu, a, &u)?),
                    None => None,
                },
            };
            match real {
                Some(r) if ts.is_zero() => Ok(Some(r)),
                Some(r) => r.with_atom(ExtendedPoint::Infinity, &ts).map(Some),
                None => Ok(None),
            }
        }
        ExtendedPoint::Finite(x) => {
            if let Some(f) = mu.as_family() {
                if let Some(g) = family_polar_power(f, x, t) {
                    return Ok(Some(ExtendedMeasure::from_family(g?)));
                }
            }
            match bridge {
                Some(b) => b.run(mu, a, t).map(Some),
                None => Ok(None),
            }
        }
    }
}

/// Closed-form `F_a^u` for `0 < u < 1`, defined when the result is again a supported family.
fn inverse_power(mu: &ExtendedMeasure, a: &ExtendedPoint, u: &Rational) -> Result<ExtendedMeasure> {
    let unavailable = || Error::InversePowerUnavailable(format!("F_{a}^{} of this measure", rational::format(u)));
    let f = mu.as_family().ok_or_else(unavailable)?;
    let g = match a {
        ExtendedPoint::Infinity => family_f_power(f, u),
        ExtendedPoint::Finite(x) => family_polar_power(f, x, u).ok_or_else(unavailable)?,
    };
    g.map(ExtendedMeasure::from_family).map_err(|_| unavailable())
}

/// `B_t^{b,a} µ = F_b^{1+t} F_a^{1/(1+t)} µ`, on families whose inverse power is known in
/// closed form: free Poisson with `a` at its shift or at `∞` and any Cauchy law.
pub fn bn_semigroup(
    mu: &ExtendedMeasure,
    b: &ExtendedPoint,
    a: &ExtendedPoint,
    t: &Rational,
) -> Result<ExtendedMeasure> {
    if t.is_negative() {
        return Err(Error::InvalidParameter("semigroup time must be non-negative".into()));
    }
    if a == b {
        return Err(Error::InvalidParameter("B_t^{b,a} needs a ≠ b".into()));
    }
    if t.is_zero() {
        return Ok(mu.clone());
    }
    let one_t = Rational::one() + t;
    let inner = inverse_power(mu, a, &(Rational::one() / &one_t))?;
    closed_form_power(&inner, b, &one_t)?.ok_or_else(|| {
        Error::InversePowerUnavailable(format!("F_{b}^{} has no closed form here", rational::format(&one_t)))
    })
}
