//! Certified root isolation, real-rootedness and the interlacing/domination relations.

use polarlab::rational::{frac, int};
use polarlab::roots::isolate_roots_with_hints;
use polarlab::{
    dominates, interlaces, is_real_rooted, isolate_roots, laguerre, polar_derivative, ExtendedPoint, FormalPolynomial,
};

fn main() -> polarlab::Result<()> {
    let tol = frac(1, 1 << 40);
    let p = laguerre(12, &int(3))?;
    let prof = isolate_roots(&p, &tol)?;
    println!("H_12[3]: {} roots, widest enclosure {}", prof.finite_count(), prof.max_width());
    for r in prof.roots().iter().take(3) {
        println!("  [{}, {}]", r.lo, r.hi);
    }

    println!("x² + 1 real-rooted? {}", is_real_rooted(&FormalPolynomial::from_i64(&[1, 0, 1]))?);

    // A repeated root is recovered exactly when supplied as a hint.
    let q = FormalPolynomial::from_roots(&[frac(1, 3), frac(1, 3), int(2)], 4)?;
    let qp = isolate_roots_with_hints(&q, &tol, &[frac(1, 3)])?;
    println!("roots of (x−1/3)²(x−2) at formal degree 4: {}", serde_json::to_string(&qp).unwrap());

    // Outside the root hull, D_a p interlaces p, and moving the pole shifts the roots.
    let d5 = isolate_roots(&polar_derivative(&p, &ExtendedPoint::int(-5))?, &tol)?;
    let d1 = isolate_roots(&polar_derivative(&p, &ExtendedPoint::int(-1))?, &tol)?;
    println!("p ⪯ D_-5 p: {}", interlaces(&prof, &d5)?);
    println!("D_-1 p ≪ D_-5 p: {}", dominates(&d1, &d5)?);
    Ok(())
}
