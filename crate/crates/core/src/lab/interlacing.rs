//! The interlacing suite: randomized checks of the ordering results for polar
//! derivatives, with the two directions that are not taken on trust fixed beforehand
//! by a floating-point brute-force oracle on small probes.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use super::corpus::random_roots;
use crate::error::{Error, Result};
use crate::point::ExtendedPoint;
use crate::poly::{polar_derivative, polar_derivative_iter, FormalPolynomial};
use crate::rational::{self, Rational};
use crate::roots::{dominates, interlaces, isolate_roots, RootProfile};

/// Which argument comes first in a relation `x ⪯ y` or `x ≪ y`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Direction {
    /// The relation holds as `first ⪯ second`.
    Forward,
    Reverse,
}

/// Directions established by [`pin_directions`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct PinnedDirections {
    /// `p` against `(x − a)D_a p` for `λ_1 < a < mean`.
    pub below_mean: Direction,
    /// `p` against `(x − a)D_a p` for `mean < a < λ_n`.
    pub above_mean: Direction,
    /// `D_a^k p` against `D_b^k p` for `a < b` both outside the root hull.
    pub iterated: Direction,
}

// Floating-point helpers for the oracle; ascending coefficients.

fn from_roots_f64(roots: &[f64]) -> Vec<f64> {
    let mut c = vec![1.0];
    for &r in roots {
        let mut next = vec![0.0; c.len() + 1];
        for (i, &v) in c.iter().enumerate() {
            next[i + 1] += v;
            next[i] -= r * v;
        }
        c = next;
    }
    c
}

fn polar_f64(c: &[f64], a: f64) -> Vec<f64> {
    let n = (c.len() - 1) as f64;
    let d: Vec<f64> = (1..c.len()).map(|k| k as f64 * c[k]).collect();
    let mut out: Vec<f64> = c.iter().map(|v| n * v).collect();
    for (k, &dk) in d.iter().enumerate() {
        out[k + 1] -= dk;
        out[k] += a * dk;
    }
    while out.len() > 1 && out.last() == Some(&0.0) {
        out.pop();
    }
    out
}

fn eval_f64(c: &[f64], x: f64) -> f64 {
    c.iter().rev().fold(0.0, |acc, &v| acc * x + v)
}

/// Real roots by scanning a fine grid for sign changes and bisecting.
fn scan_roots(c: &[f64]) -> Vec<f64> {
    const STEPS: usize = 200_000;
    let lead = *c.last().unwrap();
    let bound = 1.0 + c.iter().map(|v| (v / lead).abs()).fold(0.0, f64::max);
    let h = 2.0 * bound / STEPS as f64;
    let mut roots = Vec::new();
    let mut x0 = -bound;
    let mut f0 = eval_f64(c, x0);
    for i in 1..=STEPS {
        let x1 = -bound + i as f64 * h;
        let f1 = eval_f64(c, x1);
        if f1 == 0.0 {
            roots.push(x1);
        } else if f0 != 0.0 && (f0 < 0.0) != (f1 < 0.0) {
            let (mut lo, mut hi, flo) = (x0, x1, f0);
            for _ in 0..80 {
                let mid = 0.5 * (lo + hi);
                if (eval_f64(c, mid) < 0.0) == (flo < 0.0) {
                    lo = mid;
                } else {
                    hi = mid;
                }
            }
            roots.push(0.5 * (lo + hi));
        }
        x0 = x1;
        f0 = f1;
    }
    roots
}

fn weak_interlace(p: &[f64], q: &[f64]) -> bool {
    let mut merged = Vec::new();
    for i in 0..p.len() {
        merged.push(p[i]);
        if i < q.len() {
            merged.push(q[i]);
        }
    }
    (q.len() == p.len() || q.len() + 1 == p.len()) && merged.windows(2).all(|w| w[0] <= w[1] + 1e-9)
}

fn weak_dominate(p: &[f64], q: &[f64]) -> bool {
    p.len() == q.len() && p.iter().zip(q).all(|(x, y)| *x <= *y + 1e-9)
}

fn decide(forward: bool, reverse: bool, what: &str) -> Result<Option<Direction>> {
    match (forward, reverse) {
        (true, false) => Ok(Some(Direction::Forward)),
        (false, true) => Ok(Some(Direction::Reverse)),
        (true, true) => Ok(None),
        (false, false) => Err(Error::Hypothesis(format!("{what}: neither direction holds on a probe"))),
    }
}

fn agree(acc: &mut Option<Direction>, found: Option<Direction>, what: &str) -> Result<()> {
    match (*acc, found) {
        (_, None) => Ok(()),
        (None, d) => {
            *acc = d;
            Ok(())
        }
        (Some(x), Some(y)) if x == y => Ok(()),
        _ => Err(Error::Hypothesis(format!("{what}: probes disagree on the direction"))),
    }
}

/// Brute-force the two directions on degree-2 and degree-3 probes.
pub fn pin_directions() -> Result<PinnedDirections> {
    let probes: [&[f64]; 4] = [&[-1.0, 2.0], &[0.0, 3.0], &[0.0, 1.0, 3.0], &[-2.0, 0.5, 1.0]];
    let (mut below, mut above, mut iterated) = (None, None, None);
    for roots in probes {
        let p = from_roots_f64(roots);
        let n = roots.len() as f64;
        let mean = roots.iter().sum::<f64>() / n;
        let (lo, hi) = (roots[0], *roots.last().unwrap());
        for (a, slot) in [(0.5 * (lo + mean), &mut below), (0.5 * (mean + hi), &mut above)] {
            let mut q = scan_roots(&polar_f64(&p, a));
            q.push(a);
            q.sort_by(f64::total_cmp);
            let found = decide(weak_interlace(roots, &q), weak_interlace(&q, roots), "mean split")?;
            agree(slot, found, "mean split")?;
        }
        for (a, b) in [(lo - 3.0, lo - 1.0), (hi + 1.0, hi + 3.0)] {
            let (mut pa, mut pb) = (p.clone(), p.clone());
            for _ in 1..roots.len() {
                pa = polar_f64(&pa, a);
                pb = polar_f64(&pb, b);
                let (ra, rb) = (scan_roots(&pa), scan_roots(&pb));
                let found = decide(weak_dominate(&ra, &rb), weak_dominate(&rb, &ra), "iterated")?;
                agree(&mut iterated, found, "iterated")?;
            }
        }
    }
    let unresolved = || Error::Hypothesis("probes could not separate the directions".into());
    Ok(PinnedDirections {
        below_mean: below.ok_or_else(unresolved)?,
        above_mean: above.ok_or_else(unresolved)?,
        iterated: iterated.ok_or_else(unresolved)?,
    })
}

/// One randomized instance: distinct rational roots and the poles used by each check.
#[derive(Clone, Debug)]
pub struct Instance {
    pub roots: Vec<Rational>,
    /// Strictly inside the root hull, away from the mean.
    pub inner: Rational,
    /// Outside the hull.
    pub outer: Rational,
    /// `a < b`, both on the same side outside the hull.
    pub pair: (Rational, Rational),
    /// Target degree of the iterated derivatives.
    pub k: usize,
}

pub fn random_instance<R: Rng>(rng: &mut R, degree: usize) -> Instance {
    let roots = random_roots(rng, degree, 5, 8);
    let (lo, hi) = (roots[0].clone(), roots[degree - 1].clone());
    let mean: Rational = roots.iter().sum::<Rational>() / rational::int(degree as i64);
    let inner = loop {
        let u = rational::frac(rng.gen_range(1..64), 64);
        let x = &lo + (&hi - &lo) * u;
        if x != mean {
            break x;
        }
    };
    let gap = |rng: &mut R| rational::frac(rng.gen_range(1..=40), 8);
    let below = rng.gen_bool(0.5);
    let outer = if below { &lo - gap(rng) } else { &hi + gap(rng) };
    let (g1, g2) = (gap(rng), gap(rng));
    let pair = if rng.gen_bool(0.5) {
        let b = &lo - g1;
        (&b - g2, b)
    } else {
        let a = &hi + g1;
        let b = &a + g2;
        (a, b)
    };
    Instance { roots, inner, outer, pair, k: rng.gen_range(1..degree) }
}

/// Failure counts, in the order of [`SUITE_CHECKS`].
pub type SuiteCounts = [usize; 4];

pub const SUITE_CHECKS: [&str; 4] = ["mean_split", "outer_pole", "pole_pair", "iterated_domination"];

fn profile(p: &FormalPolynomial) -> Result<RootProfile> {
    isolate_roots(p, &rational::frac(1, 1 << 40))
}

fn related(
    dir: Direction,
    x: &RootProfile,
    y: &RootProfile,
    rel: fn(&RootProfile, &RootProfile) -> Result<bool>,
) -> Result<bool> {
    match dir {
        Direction::Forward => rel(x, y),
        Direction::Reverse => rel(y, x),
    }
}

/// Checks one instance; each entry is `true` when the corresponding relation holds.
pub fn check_instance(inst: &Instance, dirs: &PinnedDirections) -> Result<[bool; 4]> {
    let n = inst.roots.len();
    let p = FormalPolynomial::from_roots(&inst.roots, n)?;
    let pp = profile(&p)?;
    let mean: Rational = inst.roots.iter().sum::<Rational>() / rational::int(n as i64);

    let a = ExtendedPoint::Finite(inst.inner.clone());
    let lin = FormalPolynomial::from_coeffs(&[-inst.inner.clone(), rational::int(1)])?;
    let q = polar_derivative(&p, &a)?.mul(&lin);
    let qp = profile(&q)?;
    let dir = if inst.inner < mean { dirs.below_mean } else { dirs.above_mean };
    let mean_split = related(dir, &pp, &qp, interlaces)?;

    let outer = profile(&polar_derivative(&p, &ExtendedPoint::Finite(inst.outer.clone()))?)?;
    let outer_pole = interlaces(&pp, &outer)?;

    let (pa, pb) = (ExtendedPoint::Finite(inst.pair.0.clone()), ExtendedPoint::Finite(inst.pair.1.clone()));
    let da = profile(&polar_derivative(&p, &pa)?)?;
    let db = profile(&polar_derivative(&p, &pb)?)?;
    let pole_pair = interlaces(&db, &da)?;

    let dak = profile(&polar_derivative_iter(&p, &pa, inst.k)?)?;
    let dbk = profile(&polar_derivative_iter(&p, &pb, inst.k)?)?;
    let iterated = related(dirs.iterated, &dak, &dbk, dominates)?;

    Ok([mean_split, outer_pole, pole_pair, iterated])
}

/// Runs `instances` seeded instances with degrees cycling through `degrees`.
pub fn run_suite(seed: u64, instances: usize, degrees: &[usize], dirs: &PinnedDirections) -> Result<SuiteCounts> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let batch: Vec<Instance> =
        (0..instances).map(|i| random_instance(&mut rng, degrees[i % degrees.len()].max(2))).collect();
    let results: Vec<[bool; 4]> = batch.par_iter().map(|inst| check_instance(inst, dirs)).collect::<Result<_>>()?;
    let mut counts = [0; 4];
    for r in results {
        for (c, ok) in counts.iter_mut().zip(r) {
            *c += usize::from(!ok);
        }
    }
    Ok(counts)
}
