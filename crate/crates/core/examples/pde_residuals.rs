//! Transform-side checks: the characteristic relation for R-transforms and the evolution
//! equation for `G(z, t)`, both evaluated on closed forms.

use num_complex::Complex64;
use polarlab::rational::{frac, int};
use polarlab::transforms::{characteristic_residual, pde_residual_g, write_residual_csv, ResidualRow};
use polarlab::{ExtendedMeasure, ExtendedPoint, Family};

fn main() -> polarlab::Result<()> {
    let fam = Family::free_poisson(int(2))?;
    for (xi, t) in [(-0.3, frac(2, 1)), (0.25, frac(7, 2))] {
        println!(
            "characteristic residual at ξ₀ = {xi}, t = {t}: {:.2e}",
            characteristic_residual(&fam, &int(0), &t, xi)?
        );
    }
    let mut rows = Vec::new();
    for (name, mu) in [("free_poisson", ExtendedMeasure::free_poisson(int(2))?), ("cauchy", ExtendedMeasure::cauchy())]
    {
        for a in [ExtendedPoint::Infinity, ExtendedPoint::int(0)] {
            for h in [1e-4, 5e-5] {
                let z = Complex64::new(1.0, 2.0);
                rows.push(ResidualRow {
                    family: name.into(),
                    lambda: (name == "free_poisson").then_some(2.0),
                    a: a.to_string(),
                    t: 2.0,
                    z_re: z.re,
                    z_im: z.im,
                    h,
                    residual: pde_residual_g(&mu, &a, 2.0, z, h)?,
                });
            }
        }
    }
    write_residual_csv(std::io::stdout().lock(), &rows)
}
