use std::f64::consts::FRAC_PI_2;
use std::io::Write;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::roots::RootProfile;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Chart {
    /// Equal-width bins between the extreme finite roots.
    Linear,
    /// Equal bins in `θ = arctan x` over `(−π/2, π/2)`; the outer edges are `±∞`.
    Arctan,
}

impl std::str::FromStr for Chart {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "linear" => Ok(Chart::Linear),
            "arctan" => Ok(Chart::Arctan),
            _ => Err(Error::Config { field: "chart".into(), reason: format!("unknown chart {s:?}") }),
        }
    }
}

/// `kind` is `bin` or `at_infinity`. Masses are fractions of the formal degree;
/// `density` is mass per unit length and 0 for unbounded bins.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct HistogramRow {
    pub kind: &'static str,
    pub lo: f64,
    pub hi: f64,
    pub mass: f64,
    pub density: f64,
}

/// Histogram of a root profile (multiplicities counted). The `at_infinity` row is
/// always present; on the arctan chart that mass is also added to the last bin.
pub fn emit_histogram(profile: &RootProfile, bins: usize, chart: Chart) -> Result<Vec<HistogramRow>> {
    if bins == 0 {
        return Err(Error::InvalidParameter("bins must be at least 1".into()));
    }
    let n = profile.formal_degree();
    if n == 0 {
        return Err(Error::EmptyProfile);
    }
    let total = n as f64;
    let points: Vec<(f64, usize)> =
        profile.roots().iter().zip(profile.midpoints_f64()).map(|(r, x)| (x, r.multiplicity)).collect();

    let edges: Vec<f64> = match chart {
        Chart::Linear => {
            let lo = points.iter().map(|p| p.0).fold(f64::INFINITY, f64::min);
            let hi = points.iter().map(|p| p.0).fold(f64::NEG_INFINITY, f64::max);
            let (lo, hi) = if points.is_empty() {
                (-0.5, 0.5)
            } else if lo == hi {
                (lo - 0.5, hi + 0.5)
            } else {
                (lo, hi)
            };
            (0..=bins).map(|i| lo + (hi - lo) * i as f64 / bins as f64).collect()
        }
        Chart::Arctan => (0..=bins)
            .map(|i| match i {
                0 => f64::NEG_INFINITY,
                i if i == bins => f64::INFINITY,
                i => (-FRAC_PI_2 + std::f64::consts::PI * i as f64 / bins as f64).tan(),
            })
            .collect(),
    };

    let mut counts = vec![0usize; bins];
    for &(x, m) in &points {
        let i = edges[1..bins].partition_point(|e| *e <= x);
        counts[i] += m;
    }
    let at_inf = profile.infinity_count();
    if chart == Chart::Arctan {
        counts[bins - 1] += at_inf;
    }
    let mut rows: Vec<HistogramRow> = counts
        .iter()
        .enumerate()
        .map(|(i, &c)| {
            let (lo, hi) = (edges[i], edges[i + 1]);
            let mass = c as f64 / total;
            let width = hi - lo;
            let density = if width.is_finite() { mass / width } else { 0.0 };
            HistogramRow { kind: "bin", lo, hi, mass, density }
        })
        .collect();
    rows.push(HistogramRow {
        kind: "at_infinity",
        lo: f64::INFINITY,
        hi: f64::INFINITY,
        mass: at_inf as f64 / total,
        density: 0.0,
    });
    Ok(rows)
}

/// Writes rows with header `kind,lo,hi,mass,density`.
pub fn write_histogram_csv<W: Write>(out: W, rows: &[HistogramRow]) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    for r in rows {
        w.serialize(r).map_err(|e| Error::Io(e.to_string()))?;
    }
    w.flush()?;
    Ok(())
}
