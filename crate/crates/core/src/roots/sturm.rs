//! Exact Sturm-sequence machinery over ℚ: square-free decomposition, real-root
//! counting and bisection isolation. Used for small degrees and as the exact
//! fallback when the certified fast path in [`super::certify`] cannot conclude.

use num_traits::{One, Signed, Zero};

use super::certify::IntPoly;
use crate::rational::{self, Rational};

/// Dense polynomial, index `k` is the coefficient of `x^k`, no trailing zeros.
pub(crate) type RPoly = Vec<Rational>;

pub(crate) fn trim(mut p: RPoly) -> RPoly {
    while p.last().is_some_and(Zero::is_zero) {
        p.pop();
    }
    p
}

fn degree(p: &RPoly) -> Option<usize> {
    p.len().checked_sub(1)
}

pub(crate) fn derivative(p: &RPoly) -> RPoly {
    trim(p.iter().enumerate().skip(1).map(|(k, c)| c * Rational::from_integer(k.into())).collect())
}

fn monic(p: RPoly) -> RPoly {
    match p.last() {
        Some(lead) => {
            let lead = lead.clone();
            p.into_iter().map(|c| c / &lead).collect()
        }
        None => p,
    }
}

/// Scales by `1/|lead|`, keeping the sign pattern.
fn normalize_positive(p: RPoly) -> RPoly {
    match p.last() {
        Some(lead) => {
            let lead = lead.abs();
            p.into_iter().map(|c| c / &lead).collect()
        }
        None => p,
    }
}

pub(crate) fn div_rem(a: &RPoly, b: &RPoly) -> (RPoly, RPoly) {
    let db = degree(b).expect("division by zero polynomial");
    let mut r = a.clone();
    if r.len() <= db {
        return (Vec::new(), r);
    }
    let lead = b[db].clone();
    let mut q = vec![Rational::zero(); r.len() - db];
    for k in (0..q.len()).rev() {
        let c = &r[k + db] / &lead;
        if c.is_zero() {
            continue;
        }
        for (j, bj) in b.iter().enumerate() {
            r[k + j] -= &c * bj;
        }
        q[k] = c;
    }
    (trim(q), trim(r))
}

pub(crate) fn gcd(a: &RPoly, b: &RPoly) -> RPoly {
    let (mut x, mut y) = (trim(a.clone()), trim(b.clone()));
    while !y.is_empty() {
        let (_, r) = div_rem(&x, &y);
        x = y;
        y = monic(r);
    }
    monic(x)
}

fn exact_div(a: &RPoly, b: &RPoly) -> RPoly {
    let (q, r) = div_rem(a, b);
    debug_assert!(r.is_empty());
    q
}

fn sub(a: &RPoly, b: &RPoly) -> RPoly {
    let n = a.len().max(b.len());
    trim(
        (0..n)
            .map(|k| {
                a.get(k).cloned().unwrap_or_else(Rational::zero) - b.get(k).cloned().unwrap_or_else(Rational::zero)
            })
            .collect(),
    )
}

/// Yun's square-free decomposition: `p = c · ∏ f_i^i`, returned as `(f_i, i)` for non-constant `f_i`.
pub(crate) fn square_free_decomposition(p: &RPoly) -> Vec<(RPoly, usize)> {
    let p = trim(p.clone());
    let mut out = Vec::new();
    if degree(&p).unwrap_or(0) == 0 {
        return out;
    }
    let dp = derivative(&p);
    let a = gcd(&p, &dp);
    let mut b = exact_div(&p, &a);
    let mut c = exact_div(&dp, &a);
    let mut d = sub(&c, &derivative(&b));
    let mut i = 1;
    while degree(&b).unwrap_or(0) > 0 {
        let f = gcd(&b, &d);
        b = exact_div(&b, &f);
        c = exact_div(&d, &f);
        d = sub(&c, &derivative(&b));
        if degree(&f).unwrap_or(0) > 0 {
            out.push((f, i));
        }
        i += 1;
    }
    out
}

pub(crate) struct SturmChain {
    chain: Vec<RPoly>,
    /// Integer multiples of `chain`, for fast exact sign evaluation.
    ints: Vec<IntPoly>,
}

fn to_int(p: &RPoly) -> IntPoly {
    let l = rational::lcm_denominators(p.iter());
    IntPoly::new(p.iter().map(|c| (c * Rational::from_integer(l.clone())).to_integer()).collect())
}

impl SturmChain {
    pub(crate) fn new(p: &RPoly) -> Self {
        let p = trim(p.clone());
        let mut chain = vec![normalize_positive(p.clone())];
        let dp = derivative(&p);
        if !dp.is_empty() {
            chain.push(normalize_positive(dp));
            loop {
                let n = chain.len();
                let (_, r) = div_rem(&chain[n - 2], &chain[n - 1]);
                if r.is_empty() {
                    break;
                }
                chain.push(normalize_positive(r.into_iter().map(|c| -c).collect()));
            }
        }
        let ints = chain.iter().map(to_int).collect();
        SturmChain { chain, ints }
    }

    fn variations(signs: impl Iterator<Item = i8>) -> usize {
        let mut count = 0;
        let mut last = 0i8;
        for s in signs.filter(|&s| s != 0) {
            if last != 0 && s != last {
                count += 1;
            }
            last = s;
        }
        count
    }

    fn variations_at(&self, x: &Rational) -> usize {
        Self::variations(self.ints.iter().map(|p| p.sign_at(x)))
    }

    fn variations_at_infinity(&self, positive: bool) -> usize {
        Self::variations(self.chain.iter().map(|p| {
            let lead = if p.last().unwrap().is_positive() { 1 } else { -1 };
            let odd = (p.len() - 1) % 2 == 1;
            if !positive && odd {
                -lead
            } else {
                lead
            }
        }))
    }

    /// Distinct real roots of the (square-free part of the) first polynomial.
    pub(crate) fn count_all(&self) -> usize {
        self.variations_at_infinity(false) - self.variations_at_infinity(true)
    }

    /// Distinct roots in the half-open interval `(lo, hi]`.
    pub(crate) fn count(&self, lo: &Rational, hi: &Rational) -> usize {
        self.variations_at(lo) - self.variations_at(hi)
    }

    pub(crate) fn base(&self) -> &RPoly {
        &self.chain[0]
    }

    fn vanishes_at(&self, x: &Rational) -> bool {
        self.ints[0].sign_at(x) == 0
    }
}

/// `1 + max |c_k / c_n|`, a strict bound on the absolute value of every root.
pub(crate) fn cauchy_bound(p: &RPoly) -> Rational {
    let lead = p.last().unwrap().abs();
    let m = p[..p.len() - 1].iter().map(|c| c.abs() / &lead).fold(Rational::zero(), |a, b| if b > a { b } else { a });
    m + Rational::one()
}

/// An isolating interval `(lo, hi]` for one root of `factor`, refined by Sturm counts.
#[derive(Clone)]
pub(crate) struct Isolated {
    pub lo: Rational,
    pub hi: Rational,
    pub exact: bool,
    pub factor: usize,
}

fn half() -> Rational {
    Rational::new(1.into(), 2.into())
}

impl Isolated {
    pub(crate) fn refine_once(&mut self, chain: &SturmChain) {
        if self.exact {
            return;
        }
        let mid = (&self.lo + &self.hi) * half();
        if chain.vanishes_at(&mid) {
            self.lo = mid.clone();
            self.hi = mid;
            self.exact = true;
        } else if chain.count(&self.lo, &mid) == 1 {
            self.hi = mid;
        } else {
            self.lo = mid;
        }
    }

    pub(crate) fn width(&self) -> Rational {
        &self.hi - &self.lo
    }
}

pub(crate) fn isolate(chain: &SturmChain, factor: usize, tol: &Rational) -> Vec<Isolated> {
    let bound = cauchy_bound(chain.base());
    let mut pending = vec![(-bound.clone(), bound, chain.count_all())];
    let mut found = Vec::new();
    while let Some((lo, hi, n)) = pending.pop() {
        if n == 0 {
            continue;
        }
        if n == 1 {
            let exact = chain.vanishes_at(&hi);
            let mut iso =
                if exact { Isolated { lo: hi.clone(), hi, exact, factor } } else { Isolated { lo, hi, exact, factor } };
            while !iso.exact && &iso.width() > tol {
                iso.refine_once(chain);
            }
            found.push(iso);
            continue;
        }
        let mid = (&lo + &hi) * half();
        let left = chain.count(&lo, &mid);
        pending.push((mid.clone(), hi, n - left));
        pending.push((lo, mid, left));
    }
    found.sort_by(|a, b| a.lo.cmp(&b.lo));
    found
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{frac, int};

    fn convolve_rational(a: &[Rational], b: &[Rational]) -> Vec<Rational> {
        let mut out = vec![Rational::zero(); a.len() + b.len() - 1];
        for (i, x) in a.iter().enumerate() {
            for (j, y) in b.iter().enumerate() {
                out[i + j] += x * y;
            }
        }
        out
    }

    fn rp(c: &[i64]) -> RPoly {
        c.iter().map(|&x| int(x)).collect()
    }

    #[test]
    fn counts_real_roots() {
        assert_eq!(SturmChain::new(&rp(&[-1, 0, 1])).count_all(), 2);
        assert_eq!(SturmChain::new(&rp(&[1, 0, 1])).count_all(), 0);
        // (x-1)(x-2)(x-3)
        let c = SturmChain::new(&rp(&[-6, 11, -6, 1]));
        assert_eq!(c.count_all(), 3);
        assert_eq!(c.count(&frac(3, 2), &int(3)), 2);
    }

    #[test]
    fn yun_decomposition() {
        // (x - 1)^2 (x + 2)^3 x
        let p = rp(&[0, 1]);
        let mut acc = p.clone();
        for _ in 0..2 {
            acc = convolve_rational(&acc, &rp(&[-1, 1]));
        }
        for _ in 0..3 {
            acc = convolve_rational(&acc, &rp(&[2, 1]));
        }
        let parts = square_free_decomposition(&acc);
        let mults: Vec<usize> = parts.iter().map(|(_, m)| *m).collect();
        assert_eq!(mults, vec![1, 2, 3]);
        assert_eq!(parts[0].0, rp(&[0, 1]));
        assert_eq!(parts[1].0, rp(&[-1, 1]));
        assert_eq!(parts[2].0, rp(&[2, 1]));
    }

    #[test]
    fn isolation_hits_exact_roots() {
        let c = SturmChain::new(&rp(&[-6, 11, -6, 1]));
        let found = isolate(&c, 0, &frac(1, 1000));
        assert_eq!(found.len(), 3);
        for (iso, root) in found.iter().zip([1, 2, 3]) {
            assert!(iso.lo <= int(root) && int(root) <= iso.hi);
            assert!(iso.width() <= frac(1, 1000));
        }
    }
}
