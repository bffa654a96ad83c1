//! Certified isolation for high-degree polynomials with simple real roots.
//!
//! Approximate roots come from Laguerre's method with implicit deflation, driven by
//! exact evaluations of `p`, `p′` and `p″` at dyadic points. The approximations are
//! then certified: if `m` disjoint intervals each carry an exact sign change, the
//! degree-`m` polynomial has `m` simple real roots, one per interval. Nothing here is
//! trusted without that exact check; failure means the caller must fall back to Sturm.

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::rational::{self, Rational};

#[derive(Clone, Debug)]
pub(crate) struct IntPoly {
    c: Vec<BigInt>,
}

/// `x = u / 2^shift` exactly.
fn dyadic(x: f64) -> (BigInt, u32) {
    let r = Rational::from_float(x).expect("finite");
    let d = r.denom();
    let shift = d.bits().saturating_sub(1) as u32;
    debug_assert_eq!(d, &(BigInt::one() << shift as usize));
    (r.numer().clone(), shift)
}

impl IntPoly {
    pub(crate) fn new(mut c: Vec<BigInt>) -> Self {
        while c.len() > 1 && c.last().is_some_and(Zero::is_zero) {
            c.pop();
        }
        IntPoly { c }
    }

    pub(crate) fn degree(&self) -> usize {
        self.c.len() - 1
    }

    pub(crate) fn coeffs(&self) -> &[BigInt] {
        &self.c
    }

    /// `Σ c_k u^k v^{n−k}`: same sign as `p(u/v)` for `v > 0`.
    fn homogeneous(&self, u: &BigInt, v: &BigInt) -> BigInt {
        let n = self.degree();
        let mut acc = self.c[n].clone();
        let mut vpow = BigInt::one();
        for k in (0..n).rev() {
            vpow *= v;
            acc = acc * u + &self.c[k] * &vpow;
        }
        acc
    }

    fn homogeneous_dyadic(c: &[BigInt], u: &BigInt, shift: u32) -> BigInt {
        let n = c.len() - 1;
        let mut acc = c[n].clone();
        for k in (0..n).rev() {
            acc = acc * u + (&c[k] << ((shift as usize) * (n - k)));
        }
        acc
    }

    pub(crate) fn sign_at(&self, x: &Rational) -> i8 {
        rational::sign(&self.homogeneous(x.numer(), x.denom()))
    }

    pub(crate) fn sign_at_f64(&self, x: f64) -> i8 {
        let (u, s) = dyadic(x);
        rational::sign(&Self::homogeneous_dyadic(&self.c, &u, s))
    }

    /// `(p′/p, p″/p)` at `x`, or `None` when `p(x) = 0` exactly.
    fn log_derivatives(&self, x: f64, d1: &[BigInt], d2: &[BigInt]) -> Option<(f64, f64)> {
        let (u, s) = dyadic(x);
        let p0 = Self::homogeneous_dyadic(&self.c, &u, s);
        if p0.is_zero() {
            return None;
        }
        // p′(x)·2^{s(n−1)} and p″(x)·2^{s(n−2)}, so the ratios pick up 2^s and 2^{2s}
        let g = if d1.is_empty() { 0.0 } else { rational::ratio_to_f64(&Self::homogeneous_dyadic(d1, &u, s), &p0) };
        let h = if d2.is_empty() { 0.0 } else { rational::ratio_to_f64(&Self::homogeneous_dyadic(d2, &u, s), &p0) };
        Some((rational::scale_pow2(g, s as i64), rational::scale_pow2(h, 2 * s as i64)))
    }

    fn derivative_coeffs(c: &[BigInt]) -> Vec<BigInt> {
        c.iter().enumerate().skip(1).map(|(k, x)| x * BigInt::from(k)).collect()
    }

    /// Quotient by `(x − r)` when it divides exactly.
    pub(crate) fn deflate(&self, r: &Rational) -> Option<IntPoly> {
        let n = self.degree();
        if n == 0 {
            return None;
        }
        let (u, v) = (r.numer(), r.denom());
        // p(x) = (v x − u) q(x)
        let mut q = vec![BigInt::zero(); n];
        let mut carry = self.c[n].clone();
        for k in (1..=n).rev() {
            if !(&carry % v).is_zero() {
                return None;
            }
            let qk = &carry / v;
            carry = &self.c[k - 1] + &qk * u;
            q[k - 1] = qk;
        }
        carry.is_zero().then(|| IntPoly::new(q))
    }

    /// `1 + max |c_k / c_n|` rounded up generously to an f64.
    fn cauchy_bound(&self) -> f64 {
        let n = self.degree();
        let lead = self.c[n].abs();
        let m = self.c[..n].iter().map(|c| rational::ratio_to_f64(&c.abs(), &lead)).fold(0.0f64, f64::max);
        (1.0 + m) * 1.01 + 1.0
    }

    /// Approximate roots in ascending order (Laguerre's method with implicit deflation).
    fn approximate_roots(&self) -> Option<Vec<f64>> {
        let n = self.degree();
        let d1 = Self::derivative_coeffs(&self.c);
        let d2 = Self::derivative_coeffs(&d1);
        let bound = self.cauchy_bound();
        if !bound.is_finite() {
            return None;
        }
        let mut found: Vec<f64> = Vec::with_capacity(n);
        for k in 0..n {
            let deg = (n - k) as f64;
            let mut x = match found.last() {
                None => bound,
                Some(&last) => last + (bound - last.abs()).max(1.0) * 1e-3,
            };
            for _ in 0..500 {
                let Some((p1, p2)) = self.log_derivatives(x, &d1, &d2) else {
                    if found.contains(&x) {
                        // landed exactly on a root already deflated: step off it
                        x += x.abs().max(1.0) * 1e-9;
                        continue;
                    }
                    break;
                };
                let mut g = p1;
                let mut h = p1 * p1 - p2;
                for r in &found {
                    let inv = 1.0 / (x - r);
                    g -= inv;
                    h -= inv * inv;
                }
                let disc = ((deg - 1.0) * (deg * h - g * g)).max(0.0).sqrt();
                let den = if g >= 0.0 { g + disc } else { g - disc };
                if den == 0.0 || !den.is_finite() {
                    break;
                }
                let step = deg / den;
                let next = x - step;
                if !next.is_finite() {
                    return None;
                }
                let done = next == x || step.abs() <= 4.0 * f64::EPSILON * x.abs();
                x = next;
                if done {
                    break;
                }
            }
            found.push(x);
        }
        // from far away Laguerre steps jump across the spectrum, so the order of
        // discovery is arbitrary
        found.sort_by(f64::total_cmp);
        if found.windows(2).any(|w| !(w[0] < w[1])) {
            return None;
        }
        Some(found)
    }
}

/// Certified isolating intervals of width `≤ tol`, one per root, or `None` if the
/// polynomial could not be certified to have `deg` simple real roots.
pub(crate) fn certify(p: &IntPoly, tol: &Rational) -> Option<Vec<(Rational, Rational)>> {
    let m = p.degree();
    if m == 0 {
        return Some(Vec::new());
    }
    let approx = p.approximate_roots()?;
    let bound = p.cauchy_bound();
    let mut seps = Vec::with_capacity(m + 1);
    seps.push(-bound);
    for w in approx.windows(2) {
        let mid = 0.5 * (w[0] + w[1]);
        if !(w[0] < mid && mid < w[1]) {
            return None;
        }
        seps.push(mid);
    }
    seps.push(bound);
    let signs: Vec<i8> = seps.iter().map(|&x| p.sign_at_f64(x)).collect();

    if signs.contains(&0) || signs.windows(2).any(|w| w[0] == w[1]) {
        return None;
    }

    let tol_f = rational::to_f64(tol) * 0.999;
    let mut out = Vec::with_capacity(m);
    for i in 0..m {
        let (left, right) = (seps[i], seps[i + 1]);
        let (s_left, r) = (signs[i], approx[i]);
        let lo = (r - 0.5 * tol_f).max(left);
        let hi = (r + 0.5 * tol_f).min(right);
        let (slo, shi) = (p.sign_at_f64(lo), p.sign_at_f64(hi));
        let lo_q = Rational::from_float(lo)?;
        let hi_q = Rational::from_float(hi)?;
        if slo == 0 {
            out.push((lo_q.clone(), lo_q));
            continue;
        }
        if shi == 0 {
            out.push((hi_q.clone(), hi_q));
            continue;
        }
        if slo == s_left && shi != s_left && &(&hi_q - &lo_q) <= tol {
            out.push((lo_q, hi_q));
            continue;
        }
        out.push(bisect(p, Rational::from_float(left)?, Rational::from_float(right)?, s_left, tol));
    }
    Some(out)
}

/// Bisection inside a bracket known to hold exactly one simple root.
pub(crate) fn bisect(
    p: &IntPoly,
    mut lo: Rational,
    mut hi: Rational,
    s_lo: i8,
    tol: &Rational,
) -> (Rational, Rational) {
    let half = Rational::new(1.into(), 2.into());
    while &(&hi - &lo) > tol {
        let mid = (&lo + &hi) * &half;
        match p.sign_at(&mid) {
            0 => return (mid.clone(), mid),
            s if s == s_lo => lo = mid,
            _ => hi = mid,
        }
    }
    (lo, hi)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{frac, int};

    fn ip(c: &[i64]) -> IntPoly {
        IntPoly::new(c.iter().map(|&x| BigInt::from(x)).collect())
    }

    #[test]
    fn certifies_simple_real_roots() {
        let p = ip(&[-6, 11, -6, 1]);
        let out = certify(&p, &frac(1, 1_000_000)).unwrap();
        assert_eq!(out.len(), 3);
        for ((lo, hi), r) in out.iter().zip([1, 2, 3]) {
            assert!(lo <= &int(r) && &int(r) <= hi);
        }
    }

    #[test]
    fn refuses_complex_roots() {
        assert!(certify(&ip(&[1, 0, 1]), &frac(1, 1000)).is_none());
        assert!(certify(&ip(&[2, 0, 0, 1]), &frac(1, 1000)).is_none());
    }

    #[test]
    fn deflation_is_exact() {
        // (2x - 1)(x + 3) = 2x^2 + 5x - 3
        let p = ip(&[-3, 5, 2]);
        let q = p.deflate(&frac(1, 2)).unwrap();
        assert_eq!(q.coeffs(), &[BigInt::from(3), BigInt::from(1)]);
        assert!(p.deflate(&int(1)).is_none());
    }
}
