use std::f64::consts::PI;

use super::{ContinuousPart, ExtendedMeasure, Family};
use crate::rational;

/// Points of the arctan-chart grid used by [`kolmogorov_distance`].
pub const KOLMOGOROV_GRID: usize = 4096;

/// Float snapshot of a measure's CDF: sorted finite atoms with cumulative weights.
struct CdfView<'a> {
    locs: Vec<f64>,
    cum: Vec<f64>,
    cw: f64,
    family: Option<&'a Family>,
    samples: &'a [f64],
}

impl<'a> CdfView<'a> {
    fn new(m: &'a ExtendedMeasure) -> Self {
        let mut pts: Vec<(f64, f64)> =
            m.atoms().iter().filter_map(|(p, w)| p.to_f64().map(|x| (x, rational::to_f64(w)))).collect();
        pts.sort_by(|a, b| a.0.total_cmp(&b.0));
        let mut acc = 0.0;
        let cum = pts
            .iter()
            .map(|&(_, w)| {
                acc += w;
                acc
            })
            .collect();
        let (family, samples) = match m.part() {
            ContinuousPart::Family(f) => (Some(f), &[][..]),
            ContinuousPart::Empirical(s) => (None, &s[..]),
            ContinuousPart::None => (None, &[][..]),
        };
        CdfView {
            locs: pts.into_iter().map(|p| p.0).collect(),
            cum,
            cw: rational::to_f64(&m.continuous_weight()),
            family,
            samples,
        }
    }

    fn eval(&self, x: f64, strict: bool) -> f64 {
        let k = if strict { self.locs.partition_point(|&y| y < x) } else { self.locs.partition_point(|&y| y <= x) };
        let atoms = if k == 0 { 0.0 } else { self.cum[k - 1] };
        let cont = if let Some(f) = self.family {
            f.cdf(x)
        } else if !self.samples.is_empty() {
            let j = if strict {
                self.samples.partition_point(|&y| y < x)
            } else {
                self.samples.partition_point(|&y| y <= x)
            };
            j as f64 / self.samples.len() as f64
        } else {
            0.0
        };
        atoms + self.cw * cont
    }

    /// Total mass on the finite line.
    fn finite_mass(&self) -> f64 {
        self.cum.last().copied().unwrap_or(0.0) + self.cw
    }
}

/// `sup |F_1 − F_2|` over a grid of [`KOLMOGOROV_GRID`] points equally spaced in the
/// arctan chart, every atom and sample location (both one-sided limits) and the chart
/// endpoint at `∞`, where the finite masses are compared.
pub fn kolmogorov_distance(m1: &ExtendedMeasure, m2: &ExtendedMeasure) -> f64 {
    let (c1, c2) = (CdfView::new(m1), CdfView::new(m2));
    let mut xs: Vec<f64> =
        (1..=KOLMOGOROV_GRID).map(|j| (-PI / 2.0 + PI * j as f64 / (KOLMOGOROV_GRID + 1) as f64).tan()).collect();
    for c in [&c1, &c2] {
        xs.extend_from_slice(&c.locs);
        xs.extend_from_slice(c.samples);
    }
    let mut d = (c1.finite_mass() - c2.finite_mass()).abs();
    for x in xs {
        d = d.max((c1.eval(x, false) - c2.eval(x, false)).abs());
        d = d.max((c1.eval(x, true) - c2.eval(x, true)).abs());
    }
    d
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::point::ExtendedPoint;
    use crate::quad;
    use crate::rational::{frac, int};

    #[test]
    fn trivial_cases() {
        let c = ExtendedMeasure::cauchy();
        assert_eq!(kolmogorov_distance(&c, &c), 0.0);
        let d0 = ExtendedMeasure::dirac(ExtendedPoint::int(0));
        let d1 = ExtendedMeasure::dirac(ExtendedPoint::int(1));
        assert_eq!(kolmogorov_distance(&d0, &d1), 1.0);
        let inf = ExtendedMeasure::dirac(ExtendedPoint::Infinity);
        assert_eq!(kolmogorov_distance(&d0, &inf), 1.0);
    }

    #[test]
    fn symmetric() {
        let a = ExtendedMeasure::free_poisson(int(2)).unwrap();
        let b = ExtendedMeasure::cauchy().with_atom(ExtendedPoint::int(1), &frac(1, 3)).unwrap();
        assert_eq!(kolmogorov_distance(&a, &b), kolmogorov_distance(&b, &a));
    }

    #[test]
    fn closed_form_cdf_matches_density_integral() {
        let m = ExtendedMeasure::free_poisson(frac(5, 2)).unwrap();
        let f = m.as_family().unwrap().clone();
        let (lo, _) = f.support();
        for x in [0.5, 1.0, 2.0, 4.0, 6.0] {
            let q = quad::integrate(|y| f.density(y), lo, x, 1e-12);
            assert!((m.cdf(x) - q).abs() < 1e-9, "x = {x}");
        }
    }

    #[test]
    fn empirical_quantiles_approach_family() {
        let m = ExtendedMeasure::free_poisson(int(3)).unwrap();
        let d1 = kolmogorov_distance(&m, &m.to_empirical(50).unwrap());
        let d2 = kolmogorov_distance(&m, &m.to_empirical(500).unwrap());
        assert!(d2 < d1 && d2 <= 1.0 / 500.0 + 1e-9);
    }
}
