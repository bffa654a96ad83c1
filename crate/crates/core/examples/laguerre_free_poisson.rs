//! Repeated `D_0` on scaled Laguerre polynomials approaches the closed-form power
//! `F_0^2 π_2 = Dil_{1/2} π_3`; also prints a density histogram against Marchenko–Pastur.

use polarlab::lab::{emit_histogram, Chart};
use polarlab::measures::{closed_form_power, kolmogorov_distance};
use polarlab::rational::{frac, int};
use polarlab::roots::isolate_roots_with_hints;
use polarlab::{dilate, empirical_distribution, isolate_roots, laguerre, polar_derivative_iter, transforms};
use polarlab::{ExtendedMeasure, ExtendedPoint};

fn main() -> polarlab::Result<()> {
    let zero = ExtendedPoint::int(0);
    let target = closed_form_power(&ExtendedMeasure::free_poisson(int(2))?, &zero, &int(2))?.unwrap();
    println!("target: {}", target.as_family().unwrap());
    for n in [64usize, 128, 256] {
        let p = dilate(&laguerre(n, &int(2))?, &frac(1, n as i64))?;
        let d = polar_derivative_iter(&p, &zero, n / 2)?;
        let mu = empirical_distribution(&isolate_roots_with_hints(&d, &frac(1, 1 << 30), &[])?)?;
        println!("N = {n:>3}: Kolmogorov distance {:.5}", kolmogorov_distance(&mu, &target));
    }

    let n = 128;
    let p = dilate(&laguerre(n, &int(2))?, &frac(1, n as i64))?;
    let rows = emit_histogram(&isolate_roots(&p, &frac(1, 1 << 30))?, 12, Chart::Linear)?;
    println!("{:>8} {:>8} {:>8}", "center", "hist", "mp");
    for r in rows.iter().filter(|r| r.kind == "bin") {
        let x = 0.5 * (r.lo + r.hi);
        println!("{x:>8.3} {:>8.4} {:>8.4}", r.density, transforms::mp_density(2.0, x)?);
    }
    Ok(())
}
