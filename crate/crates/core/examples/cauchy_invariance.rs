//! The standard Cauchy law is fixed by every polar power: the roots of `D_1^{N/2|N} C_N`
//! stay Cauchy distributed, and the closed forms confirm it for any pole.

use polarlab::measures::{closed_form_power, kolmogorov_distance};
use polarlab::rational::{frac, int};
use polarlab::roots::isolate_roots_with_hints;
use polarlab::{cosine_appell, empirical_distribution, polar_derivative_iter, ExtendedMeasure, ExtendedPoint};

fn main() -> polarlab::Result<()> {
    let cauchy = ExtendedMeasure::cauchy();
    for a in [ExtendedPoint::int(-3), ExtendedPoint::Finite(frac(1, 2)), ExtendedPoint::Infinity] {
        let out = closed_form_power(&cauchy, &a, &frac(7, 3))?.unwrap();
        println!("F_{a}^(7/3) Cauchy = {}", out.as_family().unwrap());
    }
    let pole = ExtendedPoint::int(1);
    for n in [100usize, 200, 400] {
        let d = polar_derivative_iter(&cosine_appell(n), &pole, n / 2)?;
        let prof = isolate_roots_with_hints(&d, &frac(1, 1 << 30), &[int(1)])?;
        let dist = kolmogorov_distance(&empirical_distribution(&prof)?, &cauchy);
        println!("N = {n}: distance to Cauchy {dist:.5}");
    }
    Ok(())
}
