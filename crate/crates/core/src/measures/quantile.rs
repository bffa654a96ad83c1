use num_bigint::BigInt;
use num_traits::ToPrimitive;

use super::{ContinuousPart, ExtendedMeasure};
use crate::error::{Error, Result};
use crate::point::ExtendedPoint;
use crate::poly::FormalPolynomial;
use crate::rational::{self, Rational};

/// Continuous quantiles are rounded to this many binary digits after the point so the
/// resulting integer polynomial stays small.
const DYADIC_BITS: u32 = 32;

/// Roots of a quantile polynomial: sorted finite roots, the count at `∞`, and the
/// locations known to be repeated (useful hints for root isolation).
pub(crate) struct QuantileRoots {
    pub roots: Vec<Rational>,
    pub infinity: usize,
    pub repeated: Vec<Rational>,
}

fn dyadic(x: f64) -> Result<Rational> {
    let scale = 2f64.powi(DYADIC_BITS as i32);
    let n = rational::from_f64((x * scale).round())?;
    Ok(n / Rational::from_integer(BigInt::from(1u64 << DYADIC_BITS)))
}

/// Integer copy counts `round(N·w_i)` summing to `N`, the discrepancy going to the largest weight.
fn allocate(weights: &[Rational], n: usize) -> Result<Vec<usize>> {
    let nr = rational::int(n as i64);
    let mut counts: Vec<i64> =
        weights.iter().map(|w| rational::round(&(w * &nr)).to_i64().unwrap_or(i64::MAX)).collect();
    let diff = n as i64 - counts.iter().sum::<i64>();
    let largest = (0..weights.len()).max_by(|&i, &j| weights[i].cmp(&weights[j]).then(j.cmp(&i))).unwrap_or(0);
    counts[largest] += diff;
    if counts[largest] < 0 {
        return Err(Error::InvalidParameter(format!("degree {n} too small to allocate the atoms")));
    }
    Ok(counts.into_iter().map(|c| c as usize).collect())
}

pub(crate) fn quantile_roots(mu: &ExtendedMeasure, n: usize) -> Result<QuantileRoots> {
    if n == 0 {
        return Err(Error::InvalidParameter("quantile polynomial degree must be positive".into()));
    }
    let mut weights: Vec<Rational> = mu.atoms().iter().map(|(_, w)| w.clone()).collect();
    let cw = mu.continuous_weight();
    let has_part = !matches!(mu.part(), ContinuousPart::None);
    if has_part {
        weights.push(cw);
    }
    let counts = allocate(&weights, n)?;
    let mut roots = Vec::with_capacity(n);
    let mut infinity = 0;
    let mut repeated = Vec::new();
    for ((x, _), &c) in mu.atoms().iter().zip(&counts) {
        match x {
            ExtendedPoint::Infinity => infinity += c,
            ExtendedPoint::Finite(r) => {
                roots.extend(std::iter::repeat_n(r.clone(), c));
                if c > 0 {
                    repeated.push(r.clone());
                }
            }
        }
    }
    if has_part {
        let k = *counts.last().unwrap();
        let u = |i: usize| (2 * i - 1) as f64 / (2 * k) as f64;
        for i in 1..=k {
            let q = match mu.part() {
                ContinuousPart::Family(f) => f.quantile(u(i)),
                ContinuousPart::Empirical(s) => {
                    let idx = ((u(i) * s.len() as f64).ceil() as usize).clamp(1, s.len()) - 1;
                    s[idx]
                }
                ContinuousPart::None => unreachable!(),
            };
            if !q.is_finite() {
                return Err(Error::InvalidParameter("quantile is not finite".into()));
            }
            roots.push(dyadic(q)?);
        }
    }
    roots.sort();
    for w in roots.windows(2) {
        if w[0] == w[1] && !repeated.contains(&w[0]) {
            repeated.push(w[0].clone());
        }
    }
    Ok(QuantileRoots { roots, infinity, repeated })
}

/// Real-rooted polynomial of formal degree `n` whose roots are `round(n·w)` copies of each
/// atom (atoms at `∞` become roots at `∞`) and the conditional quantiles of the continuous
/// part at levels `(2i − 1)/(2K)`, so that its root distribution tends to `mu`.
pub fn quantile_polynomial(mu: &ExtendedMeasure, n: usize) -> Result<FormalPolynomial> {
    let q = quantile_roots(mu, n)?;
    debug_assert_eq!(q.roots.len() + q.infinity, n);
    FormalPolynomial::from_roots(&q.roots, n)
}
