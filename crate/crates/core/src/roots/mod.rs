//! Real-rootedness, certified root isolation, empirical root distributions and the
//! interlacing / domination relations between root profiles.

mod certify;
mod sturm;

use std::cmp::Ordering;

use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::measures::ExtendedMeasure;
use crate::point::ExtendedPoint;
use crate::poly::FormalPolynomial;
use crate::rational::{self, Rational};

use certify::IntPoly;
use sturm::{Isolated, RPoly, SturmChain};

/// Above this precise degree the certified fast path is tried before Sturm sequences.
const STURM_DEGREE_LIMIT: usize = 32;

/// A certified enclosure `[lo, hi]` of one real root together with its multiplicity.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RootInterval {
    pub lo: Rational,
    pub hi: Rational,
    pub multiplicity: usize,
}

impl RootInterval {
    pub fn exact(x: Rational, multiplicity: usize) -> Self {
        RootInterval { lo: x.clone(), hi: x, multiplicity }
    }

    pub fn midpoint(&self) -> Rational {
        (&self.lo + &self.hi) / rational::int(2)
    }

    pub fn width(&self) -> Rational {
        &self.hi - &self.lo
    }

    pub fn contains(&self, other: &RootInterval) -> bool {
        self.lo <= other.lo && other.hi <= self.hi
    }
}

/// Sorted finite roots (as certified intervals) plus the number of roots at infinity.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RootProfile {
    roots: Vec<RootInterval>,
    infinity_count: usize,
}

impl RootProfile {
    pub fn new(mut roots: Vec<RootInterval>, infinity_count: usize) -> Result<Self> {
        roots.sort_by(|a, b| a.lo.cmp(&b.lo));
        for r in &roots {
            if r.lo > r.hi || r.multiplicity == 0 {
                return Err(Error::InvalidParameter("malformed root interval".into()));
            }
        }
        if roots.windows(2).any(|w| w[0].hi >= w[1].lo) {
            return Err(Error::InvalidParameter("root intervals overlap".into()));
        }
        Ok(RootProfile { roots, infinity_count })
    }

    /// Profile of exactly known roots; repeated values are merged into multiplicities.
    pub fn from_points(points: &[Rational], infinity_count: usize) -> Result<Self> {
        let mut sorted = points.to_vec();
        sorted.sort();
        let mut roots: Vec<RootInterval> = Vec::new();
        for x in sorted {
            match roots.last_mut() {
                Some(last) if last.lo == x => last.multiplicity += 1,
                _ => roots.push(RootInterval::exact(x, 1)),
            }
        }
        Self::new(roots, infinity_count)
    }

    pub fn roots(&self) -> &[RootInterval] {
        &self.roots
    }

    pub fn infinity_count(&self) -> usize {
        self.infinity_count
    }

    /// Finite roots counted with multiplicity.
    pub fn finite_count(&self) -> usize {
        self.roots.iter().map(|r| r.multiplicity).sum()
    }

    pub fn formal_degree(&self) -> usize {
        self.finite_count() + self.infinity_count
    }

    /// `λ_1 ≤ λ_2 ≤ …`, each interval repeated by its multiplicity.
    pub fn ordered(&self) -> Vec<&RootInterval> {
        self.roots.iter().flat_map(|r| std::iter::repeat_n(r, r.multiplicity)).collect()
    }

    pub fn midpoints_f64(&self) -> Vec<f64> {
        self.ordered().iter().map(|r| rational::to_f64(&r.midpoint())).collect()
    }

    pub fn max_width(&self) -> Rational {
        self.roots.iter().map(RootInterval::width).max().unwrap_or_else(Rational::zero)
    }
}

#[derive(Serialize, Deserialize)]
struct IntervalJson {
    lo: String,
    hi: String,
    mult: usize,
}

#[derive(Serialize, Deserialize)]
struct ProfileJson {
    roots: Vec<IntervalJson>,
    at_infinity: usize,
}

impl Serialize for RootProfile {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        ProfileJson {
            roots: self
                .roots
                .iter()
                .map(|r| IntervalJson {
                    lo: rational::format(&r.lo),
                    hi: rational::format(&r.hi),
                    mult: r.multiplicity,
                })
                .collect(),
            at_infinity: self.infinity_count,
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for RootProfile {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        use serde::de::Error as _;
        let raw = ProfileJson::deserialize(d)?;
        let roots = raw
            .roots
            .into_iter()
            .map(|r| {
                Ok(RootInterval { lo: rational::parse(&r.lo)?, hi: rational::parse(&r.hi)?, multiplicity: r.mult })
            })
            .collect::<Result<Vec<_>>>()
            .map_err(D::Error::custom)?;
        RootProfile::new(roots, raw.at_infinity).map_err(D::Error::custom)
    }
}

fn precise_part(p: &FormalPolynomial) -> Result<(IntPoly, usize)> {
    let d = p.precise_degree().ok_or(Error::ZeroPolynomial)?;
    Ok((IntPoly::new(p.numerators()[..=d].to_vec()), p.formal_degree() - d))
}

fn to_rpoly(p: &IntPoly) -> RPoly {
    p.coeffs().iter().map(|c| Rational::from_integer(c.clone())).collect()
}

/// Exact decision via square-free part and Sturm count: `(real roots with multiplicity, degree)`.
fn sturm_real_count(p: &IntPoly) -> (usize, usize) {
    let rp = to_rpoly(p);
    let parts = sturm::square_free_decomposition(&rp);
    let real: usize = parts.iter().map(|(f, m)| SturmChain::new(f).count_all() * m).sum();
    (real, p.degree())
}

/// Whether every finite root of `p` is real. Roots at infinity are allowed.
pub fn is_real_rooted(p: &FormalPolynomial) -> Result<bool> {
    let (ip, _) = precise_part(p)?;
    if ip.degree() == 0 {
        return Ok(true);
    }
    if ip.degree() > STURM_DEGREE_LIMIT {
        let (stripped, _) = strip_hints(ip.clone(), &[]);
        if certify::certify(&stripped, &rational::frac(1, 1)).is_some() {
            return Ok(true);
        }
    }
    let (real, degree) = sturm_real_count(&ip);
    Ok(real == degree)
}

fn strip_hints(mut ip: IntPoly, hints: &[Rational]) -> (IntPoly, Vec<RootInterval>) {
    let mut candidates: Vec<Rational> = vec![Rational::zero()];
    for h in hints {
        if !candidates.contains(h) {
            candidates.push(h.clone());
        }
    }
    let mut exact = Vec::new();
    for h in candidates {
        let mut mult = 0;
        while ip.degree() > 0 {
            match ip.deflate(&h) {
                Some(q) => {
                    ip = q;
                    mult += 1;
                }
                None => break,
            }
        }
        if mult > 0 {
            exact.push(RootInterval::exact(h, mult));
        }
    }
    (ip, exact)
}

/// Isolates the real roots of `p` to intervals of width at most `tol`.
pub fn isolate_roots(p: &FormalPolynomial, tol: &Rational) -> Result<RootProfile> {
    isolate_roots_with_hints(p, tol, &[])
}

/// As [`isolate_roots`], testing the given rational points for exact (possibly repeated)
/// roots first. Hints never change the result, only how fast it is obtained.
pub fn isolate_roots_with_hints(p: &FormalPolynomial, tol: &Rational, hints: &[Rational]) -> Result<RootProfile> {
    if !tol.is_positive() {
        return Err(Error::InvalidParameter("tolerance must be positive".into()));
    }
    let (ip, infinity) = precise_part(p)?;
    if ip.degree() == 0 {
        return RootProfile::new(Vec::new(), infinity);
    }
    if ip.degree() > STURM_DEGREE_LIMIT || !hints.is_empty() {
        let (stripped, exact) = strip_hints(ip.clone(), hints);
        if let Some(intervals) = certify::certify(&stripped, tol) {
            let mut roots: Vec<RootInterval> =
                intervals.into_iter().map(|(lo, hi)| RootInterval { lo, hi, multiplicity: 1 }).collect();
            for ex in &exact {
                for r in roots.iter_mut() {
                    if r.lo <= ex.lo && ex.lo <= r.hi {
                        step_off(&stripped, r, &ex.lo);
                    }
                }
            }
            roots.extend(exact);
            return RootProfile::new(roots, infinity);
        }
    }
    sturm_isolate(&ip, tol, infinity)
}

/// Narrows `r` (a certified enclosure of one simple root of `p`) so that it no longer
/// contains `point`, where `p(point) != 0`.
fn step_off(p: &IntPoly, r: &mut RootInterval, point: &Rational) {
    let s_point = p.sign_at(point);
    if p.sign_at(&r.lo) != s_point {
        r.hi = point.clone();
    } else {
        r.lo = point.clone();
    }
    // the root differs from `point`, so moving towards it terminates
    let mut gap = r.width() / rational::int(16);
    loop {
        let cand = if &r.hi == point { point - &gap } else { point + &gap };
        let s = p.sign_at(&cand);
        if s == 0 {
            *r = RootInterval::exact(cand, 1);
            return;
        }
        if s == s_point {
            if &r.hi == point {
                r.hi = cand;
            } else {
                r.lo = cand;
            }
            return;
        }
        // the root sits between `cand` and `point`
        if &r.hi == point {
            r.lo = cand;
        } else {
            r.hi = cand;
        }
        gap /= rational::int(16);
    }
}

fn sturm_isolate(ip: &IntPoly, tol: &Rational, infinity: usize) -> Result<RootProfile> {
    let rp = to_rpoly(ip);
    let parts = sturm::square_free_decomposition(&rp);
    let chains: Vec<SturmChain> = parts.iter().map(|(f, _)| SturmChain::new(f)).collect();
    let real: usize = chains.iter().zip(&parts).map(|(c, (_, m))| c.count_all() * m).sum();
    if real != ip.degree() {
        return Err(Error::NotRealRooted { degree: ip.degree(), real_roots: real });
    }
    let mut isolated: Vec<Isolated> = chains.iter().enumerate().flat_map(|(i, c)| sturm::isolate(c, i, tol)).collect();
    // roots of different square-free factors are distinct: refine until the intervals separate
    loop {
        isolated.sort_by(|a, b| a.lo.cmp(&b.lo).then(a.hi.cmp(&b.hi)));
        let clash = isolated.windows(2).position(|w| w[0].hi >= w[1].lo);
        match clash {
            None => break,
            Some(i) => {
                for j in [i, i + 1] {
                    let f = isolated[j].factor;
                    isolated[j].refine_once(&chains[f]);
                }
            }
        }
    }
    let roots = isolated
        .into_iter()
        .map(|iso| RootInterval { lo: iso.lo, hi: iso.hi, multiplicity: parts[iso.factor].1 })
        .collect();
    RootProfile::new(roots, infinity)
}

/// Root distribution: mass `mult / n` at each root midpoint and `k / n` at infinity.
pub fn empirical_distribution(profile: &RootProfile) -> Result<ExtendedMeasure> {
    let n = profile.formal_degree();
    if n == 0 {
        return Err(Error::EmptyProfile);
    }
    let total = rational::int(n as i64);
    let mut atoms: Vec<(ExtendedPoint, Rational)> = profile
        .roots
        .iter()
        .map(|r| (ExtendedPoint::Finite(r.midpoint()), rational::int(r.multiplicity as i64) / &total))
        .collect();
    if profile.infinity_count > 0 {
        atoms.push((ExtendedPoint::Infinity, rational::int(profile.infinity_count as i64) / &total));
    }
    ExtendedMeasure::atomic(atoms)
}

/// `x ≤ y` unless the intervals certify `x > y`; overlapping enclosures count as ties.
fn weakly_le(x: &RootInterval, y: &RootInterval) -> bool {
    x.lo.cmp(&y.hi) != Ordering::Greater
}

/// Whether `q` interlaces `p` (`p ⪯ q`): `λ_1(p) ≤ λ_1(q) ≤ λ_2(p) ≤ …`, for equal counts
/// or `q` having one root fewer. Roots at infinity take no part in the comparison.
pub fn interlaces(p: &RootProfile, q: &RootProfile) -> Result<bool> {
    let (lp, lq) = (p.ordered(), q.ordered());
    let (n, m) = (lp.len(), lq.len());
    if !(m == n || m + 1 == n) {
        return Err(Error::IncompatibleCounts { left: n, right: m });
    }
    let mut merged = Vec::with_capacity(n + m);
    for i in 0..n {
        merged.push(lp[i]);
        if i < m {
            merged.push(lq[i]);
        }
    }
    Ok(merged.windows(2).all(|w| weakly_le(w[0], w[1])))
}

/// Stochastic domination `p ≪ q`: `λ_k(p) ≤ λ_k(q)` for every `k`.
pub fn dominates(p: &RootProfile, q: &RootProfile) -> Result<bool> {
    let (lp, lq) = (p.ordered(), q.ordered());
    if lp.len() != lq.len() {
        return Err(Error::IncompatibleCounts { left: lp.len(), right: lq.len() });
    }
    Ok(lp.iter().zip(lq.iter()).all(|(a, b)| weakly_le(a, b)))
}

/// Root-mean test: `D_α p` loses precise degree iff `n·α·a_n = −a_{n−1}`.
pub fn is_root_mean(p: &FormalPolynomial, alpha: &Rational) -> bool {
    let n = p.formal_degree();
    if n == 0 {
        return false;
    }
    let lead = p.coeff(n);
    let next = p.coeff(n - 1);
    !lead.is_zero() && rational::int(n as i64) * alpha * lead == -next
}

/// Exact sign of `p` at `x`.
pub fn sign_at(p: &FormalPolynomial, x: &Rational) -> i8 {
    let v = p.eval(x);
    if v.is_zero() {
        0
    } else if v.is_positive() {
        1
    } else {
        -1
    }
}
