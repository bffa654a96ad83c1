//! Named polynomial families: `Q_{n,k}`, hypergeometric and Laguerre polynomials,
//! and the cosine Appell sequence `C_n = cos(∂) x^n`.

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::poly::FormalPolynomial;
use crate::rational::{self, Rational};

/// `n(n−1)···(n−k+1) · (x − 1)^k`, embedded at formal degree `n`.
pub fn q_polynomial(n: usize, k: usize) -> Result<FormalPolynomial> {
    if k > n {
        return Err(Error::TargetDegree { target: k, formal: n });
    }
    let lead: BigInt = (0..k).map(|i| BigInt::from(n - i)).product();
    let mut num = vec![BigInt::zero(); n + 1];
    for (j, slot) in num.iter_mut().enumerate().take(k + 1) {
        let c = rational::binomial(k, j) * &lead;
        *slot = if (k - j) % 2 == 1 { -c } else { c };
    }
    Ok(FormalPolynomial::from_integers(num))
}

/// `Σ_k x^{n−k} (−1)^k C(n,k) (n·b)^{(k)} / (n·a)^{(k)}` with falling factorials over the tuples.
pub fn hypergeometric(n: usize, upper: &[Rational], lower: &[Rational]) -> Result<FormalPolynomial> {
    let nr = rational::int(n as i64);
    for a in lower {
        let na = &nr * a;
        if na.is_integer() && na >= Rational::zero() && na < nr {
            return Err(Error::InvalidParameter(format!(
                "lower parameter {} lies in {{0, 1/n, …, (n−1)/n}} for n = {n}",
                rational::format(a)
            )));
        }
    }
    let nb: Vec<Rational> = upper.iter().map(|b| &nr * b).collect();
    let na: Vec<Rational> = lower.iter().map(|a| &nr * a).collect();
    let mut coeffs = vec![Rational::zero(); n + 1];
    let mut ratio = Rational::one();
    for k in 0..=n {
        if k > 0 {
            let step = (k - 1) as i64;
            for b in &nb {
                ratio *= b - rational::int(step);
            }
            for a in &na {
                ratio /= a - rational::int(step);
            }
        }
        let mut c = Rational::from_integer(rational::binomial(n, k)) * &ratio;
        if k % 2 == 1 {
            c = -c;
        }
        coeffs[n - k] = c;
    }
    FormalPolynomial::from_coeffs(&coeffs)
}

/// Laguerre polynomial `H_n[λ]`, the hypergeometric polynomial with one upper parameter.
pub fn laguerre(n: usize, lambda: &Rational) -> Result<FormalPolynomial> {
    hypergeometric(n, std::slice::from_ref(lambda), &[])
}

/// `C_n = Σ_k (−1)^k C(n, 2k) x^{n−2k}`.
pub fn cosine_appell(n: usize) -> FormalPolynomial {
    let mut num = vec![BigInt::zero(); n + 1];
    for k in 0..=n / 2 {
        let c = rational::binomial(n, 2 * k);
        num[n - 2 * k] = if k % 2 == 1 { -c } else { c };
    }
    FormalPolynomial::from_integers(num)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::point::ExtendedPoint;
    use crate::poly::polar_derivative;
    use crate::rational::{frac, int};

    #[test]
    fn q_polynomials() {
        assert_eq!(q_polynomial(4, 0).unwrap(), FormalPolynomial::with_degree(&[int(1)], 4).unwrap());
        assert_eq!(q_polynomial(2, 1).unwrap(), FormalPolynomial::from_i64(&[-2, 2, 0]));
        assert_eq!(q_polynomial(3, 2).unwrap(), FormalPolynomial::from_i64(&[6, -12, 6, 0]));
        assert!(q_polynomial(2, 3).is_err());
    }

    #[test]
    fn empty_parameters_give_binomial_power() {
        assert_eq!(hypergeometric(3, &[], &[]).unwrap(), FormalPolynomial::from_i64(&[-1, 3, -3, 1]));
    }

    #[test]
    fn small_hypergeometric_expansions() {
        let lambda = frac(3, 2);
        // x^2 - 2(2λ)x + (2λ)(2λ - 1)
        let expect = FormalPolynomial::from_coeffs(&[int(6), int(-6), int(1)]).unwrap();
        assert_eq!(hypergeometric(2, std::slice::from_ref(&lambda), &[]).unwrap(), expect);
        assert_eq!(laguerre(1, &lambda).unwrap(), FormalPolynomial::from_coeffs(&[-lambda, int(1)]).unwrap());
    }

    #[test]
    fn invalid_lower_parameter_rejected() {
        let err = hypergeometric(4, &[int(1)], &[frac(1, 2)]).unwrap_err();
        assert!(matches!(err, Error::InvalidParameter(msg) if msg.contains("lower parameter")));
        assert!(hypergeometric(4, &[int(1)], &[int(0)]).is_err());
        assert!(hypergeometric(4, &[int(1)], &[int(1)]).is_ok());
        assert!(hypergeometric(4, &[int(1)], &[frac(-1, 4)]).is_ok());
    }

    #[test]
    fn hypergeometric_derivative_is_hypergeometric() {
        // ∂H_n[b; a] = n · H_{n−1}[(n/(n−1)) b; (n/(n−1)) a]
        let n = 6;
        let (b, a) = (frac(7, 3), frac(5, 2));
        let lhs = hypergeometric(n, std::slice::from_ref(&b), std::slice::from_ref(&a)).unwrap().derivative().unwrap();
        let s = frac(n as i64, n as i64 - 1);
        let rhs = hypergeometric(n - 1, &[&s * b], &[&s * a]).unwrap().scale(&int(n as i64));
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn laguerre_zero_polar_derivative() {
        // D_0 H_n[λ] = −n(nλ) H_{n−1}[(n/(n−1))(λ−1)+1]
        let n = 5i64;
        let lambda = int(2);
        let lhs = polar_derivative(&laguerre(n as usize, &lambda).unwrap(), &ExtendedPoint::int(0)).unwrap();
        let next = frac(n, n - 1) * (&lambda - int(1)) + int(1);
        let rhs = laguerre(n as usize - 1, &next).unwrap().scale(&(int(-n) * int(n) * &lambda));
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn cosine_appell_basics() {
        assert_eq!(cosine_appell(2), FormalPolynomial::from_i64(&[-1, 0, 1]));
        assert_eq!(cosine_appell(0), FormalPolynomial::from_i64(&[1]));
        for n in 1..12 {
            let d = cosine_appell(n).derivative().unwrap();
            assert_eq!(d, cosine_appell(n - 1).scale(&int(n as i64)));
        }
    }
}
