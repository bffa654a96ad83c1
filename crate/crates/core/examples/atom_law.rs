//! Atoms under polar powers: `F_a^s µ` keeps mass `max{0, 1 − s(1 − µ({b}))}` at `b ≠ a`.
//! The continuous part has no closed form, so the polynomial bridge does the work.

use polarlab::measures::{atom_mass, Bridge};
use polarlab::rational::{self, frac, int};
use polarlab::{ExtendedMeasure, ExtendedPoint};

fn main() -> polarlab::Result<()> {
    let uniform = ExtendedMeasure::empirical((0..1000).map(|i| 1.0 + (i as f64 + 0.5) / 1000.0).collect())?;
    let b = ExtendedPoint::Finite(frac(1, 2));
    let mu = uniform.with_atom(b.clone(), &frac(3, 5))?;
    let bridge = Bridge::with_degree(200);
    for a in [ExtendedPoint::Infinity, ExtendedPoint::int(-1)] {
        for s in [frac(5, 4), frac(3, 2), int(2)] {
            let out = bridge.polar_power(&mu, &a, &s)?;
            println!(
                "a = {a:>3}, s = {:>3}: atom at 1/2 measured {:.4}, predicted {:.4}",
                rational::format(&s),
                rational::to_f64(&out.mass_at(&b)),
                rational::to_f64(&atom_mass(&mu, &a, &s, &b)?)
            );
        }
    }
    // Mass at the pole itself: t·µ({a}) ≥ 1 collapses everything onto a.
    let heavy = uniform.with_atom(ExtendedPoint::Infinity, &frac(1, 2))?;
    let out = bridge.polar_power(&heavy, &ExtendedPoint::Infinity, &int(2))?;
    println!("F^2 of a law with half its mass at ∞: {:?}", out.as_dirac());
    Ok(())
}
