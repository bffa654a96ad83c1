//! Exact polynomials carrying a formal degree, and the operators acting on them.
//!
//! A [`FormalPolynomial`] of formal degree `n` stores `n + 1` coefficients as
//! integer numerators over one shared positive denominator. When the precise
//! degree falls short of `n`, the deficit counts roots at infinity. All
//! operators consume and emit the formal degree explicitly.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::mobius::MobiusMap;
use crate::point::ExtendedPoint;
use crate::rational::{self, Rational};

#[derive(Clone)]
pub struct FormalPolynomial {
    num: Vec<BigInt>,
    den: BigInt,
}

impl FormalPolynomial {
    /// `coeffs[k]` is the coefficient of `x^k`; the formal degree is `coeffs.len() - 1`.
    pub fn from_coeffs(coeffs: &[Rational]) -> Result<Self> {
        if coeffs.is_empty() {
            return Err(Error::InvalidParameter("polynomial needs at least one coefficient".into()));
        }
        let den = rational::lcm_denominators(coeffs);
        let num = coeffs.iter().map(|c| (c * Rational::from_integer(den.clone())).to_integer()).collect();
        Ok(FormalPolynomial { num, den })
    }

    /// Like [`from_coeffs`](Self::from_coeffs) but with an explicit formal degree, padding with zeros.
    pub fn with_degree(coeffs: &[Rational], formal_degree: usize) -> Result<Self> {
        if coeffs.len() > formal_degree + 1 && coeffs[formal_degree + 1..].iter().any(|c| !c.is_zero()) {
            return Err(Error::InvalidParameter(format!("precise degree exceeds formal degree {formal_degree}")));
        }
        let mut padded: Vec<Rational> = coeffs.iter().take(formal_degree + 1).cloned().collect();
        padded.resize(formal_degree + 1, Rational::zero());
        Self::from_coeffs(&padded)
    }

    pub fn from_i64(coeffs: &[i64]) -> Self {
        Self::from_integers(coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    pub fn from_integers(num: Vec<BigInt>) -> Self {
        assert!(!num.is_empty());
        FormalPolynomial { num, den: BigInt::one() }
    }

    pub fn zero(formal_degree: usize) -> Self {
        FormalPolynomial { num: vec![BigInt::zero(); formal_degree + 1], den: BigInt::one() }
    }

    /// `x^k` at formal degree `formal_degree`.
    pub fn monomial(k: usize, formal_degree: usize) -> Self {
        let mut p = Self::zero(formal_degree.max(k));
        p.num[k] = BigInt::one();
        p
    }

    /// `∏ (x - r)` over the given roots, embedded at `formal_degree`.
    pub fn from_roots(roots: &[Rational], formal_degree: usize) -> Result<Self> {
        if roots.len() > formal_degree {
            return Err(Error::InvalidParameter("more roots than the formal degree".into()));
        }
        let factors: Vec<Vec<BigInt>> = roots.iter().map(|r| vec![-r.numer().clone(), r.denom().clone()]).collect();
        let mut num = product_tree(factors);
        num.resize(formal_degree + 1, BigInt::zero());
        // rescale to monic on the precise part
        let lead = num[roots.len()].clone();
        let mut p = FormalPolynomial { num, den: BigInt::one() };
        p.den = lead;
        p.fix_sign();
        Ok(p.reduced())
    }

    pub fn formal_degree(&self) -> usize {
        self.num.len() - 1
    }

    /// `None` for the zero polynomial.
    pub fn precise_degree(&self) -> Option<usize> {
        self.num.iter().rposition(|c| !c.is_zero())
    }

    /// Number of roots at infinity, `formal - precise`; `None` for the zero polynomial.
    pub fn infinity_multiplicity(&self) -> Option<usize> {
        self.precise_degree().map(|d| self.formal_degree() - d)
    }

    pub fn is_zero(&self) -> bool {
        self.num.iter().all(Zero::is_zero)
    }

    pub fn coeff(&self, k: usize) -> Rational {
        self.num.get(k).map(|c| Rational::new(c.clone(), self.den.clone())).unwrap_or_else(Rational::zero)
    }

    pub fn coeffs(&self) -> Vec<Rational> {
        (0..self.num.len()).map(|k| self.coeff(k)).collect()
    }

    /// Integer numerators sharing [`denominator`](Self::denominator).
    pub fn numerators(&self) -> &[BigInt] {
        &self.num
    }

    pub fn denominator(&self) -> &BigInt {
        &self.den
    }

    /// Same coefficients re-embedded at another formal degree.
    pub fn embed(&self, formal_degree: usize) -> Result<Self> {
        if let Some(d) = self.precise_degree() {
            if d > formal_degree {
                return Err(Error::InvalidParameter(format!(
                    "precise degree {d} exceeds formal degree {formal_degree}"
                )));
            }
        }
        let mut num = self.num.clone();
        num.resize(formal_degree + 1, BigInt::zero());
        Ok(FormalPolynomial { num, den: self.den.clone() })
    }

    pub fn eval(&self, x: &Rational) -> Rational {
        let mut acc = Rational::zero();
        for c in self.num.iter().rev() {
            acc = acc * x + Rational::from_integer(c.clone());
        }
        acc / Rational::from_integer(self.den.clone())
    }

    pub fn scale(&self, c: &Rational) -> Self {
        let num = self.num.iter().map(|x| x * c.numer()).collect();
        let mut p = FormalPolynomial { num, den: &self.den * c.denom() };
        p.fix_sign();
        p
    }

    /// Product; formal degrees add.
    pub fn mul(&self, other: &Self) -> Self {
        FormalPolynomial { num: convolve(&self.num, &other.num), den: &self.den * &other.den }
    }

    /// Ordinary derivative at formal degree `n - 1`.
    pub fn derivative(&self) -> Result<Self> {
        polar_derivative(self, &ExtendedPoint::Infinity)
    }

    /// Constant `c` with `self = c · other`, if one exists. Two zero polynomials give `1`.
    pub fn ratio_to(&self, other: &Self) -> Option<Rational> {
        if self.formal_degree() != other.formal_degree() {
            return None;
        }
        let pivot = match other.num.iter().position(|c| !c.is_zero()) {
            Some(k) => k,
            None => return self.is_zero().then(Rational::one),
        };
        if self.num[pivot].is_zero() {
            return None;
        }
        let (sp, op) = (&self.num[pivot], &other.num[pivot]);
        let consistent = self.num.iter().zip(other.num.iter()).all(|(s, o)| s * op == o * sp);
        consistent.then(|| Rational::new(sp * &other.den, op * &self.den))
    }

    pub fn is_proportional_to(&self, other: &Self) -> bool {
        self.ratio_to(other).is_some()
    }

    /// Divides out the common content of numerators and denominator.
    pub fn reduced(&self) -> Self {
        let g = self.num.iter().fold(self.den.clone(), |g, c| g.gcd(c));
        if g.is_one() || g.is_zero() {
            return self.clone();
        }
        FormalPolynomial { num: self.num.iter().map(|c| c / &g).collect(), den: &self.den / &g }
    }

    fn fix_sign(&mut self) {
        if self.den.is_negative() {
            self.den = -self.den.clone();
            for c in &mut self.num {
                *c = -c.clone();
            }
        }
    }
}

impl PartialEq for FormalPolynomial {
    fn eq(&self, other: &Self) -> bool {
        self.formal_degree() == other.formal_degree()
            && self.num.iter().zip(other.num.iter()).all(|(a, b)| a * &other.den == b * &self.den)
    }
}

impl Eq for FormalPolynomial {}

impl fmt::Debug for FormalPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "FormalPolynomial[n={}; ", self.formal_degree())?;
        let parts: Vec<String> = self.coeffs().iter().map(rational::format).collect();
        write!(f, "{}]", parts.join(", "))
    }
}

impl fmt::Display for FormalPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut terms = Vec::new();
        for (k, c) in self.coeffs().iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let c = rational::format(c);
            terms.push(match k {
                0 => c,
                1 => format!("{c}·x"),
                _ => format!("{c}·x^{k}"),
            });
        }
        if terms.is_empty() {
            terms.push("0".into());
        }
        write!(f, "{} (formal degree {})", terms.join(" + "), self.formal_degree())
    }
}

#[derive(Serialize, Deserialize)]
struct PolyJson {
    formal_degree: usize,
    coeffs: Vec<String>,
}

impl Serialize for FormalPolynomial {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        PolyJson { formal_degree: self.formal_degree(), coeffs: self.coeffs().iter().map(rational::format).collect() }
            .serialize(s)
    }
}

impl<'de> Deserialize<'de> for FormalPolynomial {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        use serde::de::Error as _;
        let raw = PolyJson::deserialize(d)?;
        if raw.coeffs.len() != raw.formal_degree + 1 {
            return Err(D::Error::custom(format!(
                "expected {} coefficients for formal degree {}, got {}",
                raw.formal_degree + 1,
                raw.formal_degree,
                raw.coeffs.len()
            )));
        }
        let coeffs =
            raw.coeffs.iter().map(|c| rational::parse(c)).collect::<Result<Vec<_>>>().map_err(D::Error::custom)?;
        FormalPolynomial::from_coeffs(&coeffs).map_err(D::Error::custom)
    }
}

/// `n·p(x) − (x − α)·p′(x)` for finite `α`, and `p′` for `α = ∞`; formal degree drops by one.
pub fn polar_derivative(p: &FormalPolynomial, alpha: &ExtendedPoint) -> Result<FormalPolynomial> {
    let n = p.formal_degree();
    if n == 0 {
        return Err(Error::FormalDegreeZero);
    }
    let a = &p.num;
    match alpha {
        ExtendedPoint::Infinity => {
            let num = (0..n).map(|j| &a[j + 1] * BigInt::from(j + 1)).collect();
            Ok(FormalPolynomial { num, den: p.den.clone() })
        }
        ExtendedPoint::Finite(alpha) => {
            let (u, v) = (alpha.numer(), alpha.denom());
            // result_j = (n - j) a_j + α (j + 1) a_{j+1}, over the common denominator v
            let num = (0..n)
                .map(|j| {
                    let head = &a[j] * BigInt::from(n - j);
                    let tail = &a[j + 1] * BigInt::from(j + 1) * u;
                    if v.is_one() {
                        head + tail
                    } else {
                        head * v + tail
                    }
                })
                .collect();
            Ok(FormalPolynomial { num, den: &p.den * v })
        }
    }
}

/// Applies [`polar_derivative`] `n - k` times, landing at formal degree `k`.
pub fn polar_derivative_iter(p: &FormalPolynomial, alpha: &ExtendedPoint, k: usize) -> Result<FormalPolynomial> {
    let n = p.formal_degree();
    if k > n {
        return Err(Error::TargetDegree { target: k, formal: n });
    }
    let mut q = p.clone();
    for _ in k..n {
        q = polar_derivative(&q, alpha)?;
    }
    Ok(if n - k > 1 { q.reduced() } else { q })
}

/// `(−cx + a)^n · p(T^{−1}(x))`: the roots (finite and at infinity) are mapped through `T`.
pub fn mobius_pushforward(p: &FormalPolynomial, t: &MobiusMap) -> Result<FormalPolynomial> {
    if p.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    let n = p.formal_degree();
    let (a, b, c, d) = t.entries();
    let scale = rational::lcm_denominators([a, b, c, d]);
    let int = |x: &Rational| (x * Rational::from_integer(scale.clone())).to_integer();
    let (a, b, c, d) = (int(a), int(b), int(c), int(d));
    let den = &p.den * num_traits::pow(scale, n);

    if b.is_zero() && c.is_zero() {
        // dilation: coefficient k picks up d^k a^(n-k)
        let mut dpow = BigInt::one();
        let mut num = Vec::with_capacity(n + 1);
        for k in 0..=n {
            num.push(&p.num[k] * &dpow * num_traits::pow(a.clone(), n - k));
            dpow *= &d;
        }
        let mut q = FormalPolynomial { num, den };
        q.fix_sign();
        return Ok(q);
    }

    // Σ_k p_k (dx − b)^k (−cx + a)^(n−k), homogeneous Horner from the top coefficient
    let u = [-b.clone(), d.clone()];
    let v = [a.clone(), -c.clone()];
    let mut acc: Vec<BigInt> = vec![p.num[n].clone()];
    let mut vpow: Vec<BigInt> = vec![BigInt::one()];
    for i in 1..=n {
        vpow = convolve(&vpow, &v);
        acc = convolve(&acc, &u);
        let coef = &p.num[n - i];
        if !coef.is_zero() {
            for (slot, vp) in acc.iter_mut().zip(vpow.iter()) {
                *slot += coef * vp;
            }
        }
    }
    acc.resize(n + 1, BigInt::zero());
    let mut q = FormalPolynomial { num: acc, den };
    q.fix_sign();
    Ok(q)
}

pub fn shift(p: &FormalPolynomial, c: &Rational) -> Result<FormalPolynomial> {
    mobius_pushforward(p, &MobiusMap::shift(c.clone()))
}

pub fn dilate(p: &FormalPolynomial, c: &Rational) -> Result<FormalPolynomial> {
    mobius_pushforward(p, &MobiusMap::dilation(c.clone())?)
}

/// Finite free multiplicative convolution at degree `n`.
///
/// The vectors `e_k` are read from `a_{n−k} = (−1)^k C(n,k) e_k` without normalizing
/// leading coefficients, so the operation is bilinear.
pub fn finite_free_mult(p: &FormalPolynomial, q: &FormalPolynomial) -> Result<FormalPolynomial> {
    let n = p.formal_degree();
    if q.formal_degree() != n {
        return Err(Error::DegreeMismatch { left: n, right: q.formal_degree() });
    }
    let binoms: Vec<BigInt> = (0..=n).map(|k| rational::binomial(n, k)).collect();
    let common = binoms.iter().fold(BigInt::one(), |acc, b| acc.lcm(b));
    let num = (0..=n)
        .map(|j| {
            let k = n - j;
            let term = &p.num[j] * &q.num[j] * (&common / &binoms[k]);
            if k % 2 == 1 {
                -term
            } else {
                term
            }
        })
        .collect();
    Ok(FormalPolynomial { num, den: &p.den * &q.den * common })
}

pub(crate) fn convolve(a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
    let mut out = vec![BigInt::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            if !y.is_zero() {
                out[i + j] += x * y;
            }
        }
    }
    out
}

/// Balanced product of integer polynomials.
pub(crate) fn product_tree(mut factors: Vec<Vec<BigInt>>) -> Vec<BigInt> {
    if factors.is_empty() {
        return vec![BigInt::one()];
    }
    while factors.len() > 1 {
        let mut next = Vec::with_capacity(factors.len().div_ceil(2));
        let mut it = factors.into_iter();
        while let Some(a) = it.next() {
            match it.next() {
                Some(b) => next.push(convolve(&a, &b)),
                None => next.push(a),
            }
        }
        factors = next;
    }
    factors.pop().unwrap()
}
