//! Polar derivatives with a formal degree: commutation, the degree drop at the root
//! mean, and roots escaping to infinity.

use polarlab::rational::{frac, int};
use polarlab::roots::is_root_mean;
use polarlab::{isolate_roots, polar_derivative, polar_derivative_iter, ExtendedPoint, FormalPolynomial};

fn main() -> polarlab::Result<()> {
    // p = (x + 1)(x − 1)(x − 3), root mean 1
    let p = FormalPolynomial::from_roots(&[int(-1), int(1), int(3)], 3)?;
    println!("p        = {p}");

    let (a, b) = (ExtendedPoint::int(2), ExtendedPoint::Infinity);
    let ab = polar_derivative(&polar_derivative(&p, &b)?, &a)?;
    let ba = polar_derivative(&polar_derivative(&p, &a)?, &b)?;
    println!("D_2 D_∞ p = {ab}");
    println!("D_∞ D_2 p = {ba}");
    assert_eq!(ab, ba);

    // At the root mean the precise degree drops: one root of D_1 p sits at infinity.
    let mean = int(1);
    assert!(is_root_mean(&p, &mean));
    let d = polar_derivative(&p, &ExtendedPoint::Finite(mean))?;
    println!("D_1 p    = {d}; roots {}", serde_json::to_string(&isolate_roots(&d, &frac(1, 1 << 20))?).unwrap());

    // Iterating D_0 down to formal degree 1.
    let q = polar_derivative_iter(&p, &ExtendedPoint::int(0), 1)?;
    println!("D_0^{{1|3}} p = {q}");
    Ok(())
}
