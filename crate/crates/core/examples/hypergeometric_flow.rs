//! Laguerre and hypergeometric families are closed under `D_0` and `∂`, and the cosine
//! Appell sequence satisfies `D_0² C_n = −n(n−1) C_{n−2}`.

use polarlab::rational::{self, frac, int};
use polarlab::{cosine_appell, hypergeometric, laguerre, polar_derivative_iter, ExtendedPoint};

fn main() -> polarlab::Result<()> {
    let zero = ExtendedPoint::int(0);
    let (n, m, lambda) = (9usize, 4usize, frac(5, 2));
    let r = frac(n as i64, m as i64);
    let flowed = polar_derivative_iter(&laguerre(n, &lambda)?, &zero, m)?;
    let target = laguerre(m, &(&r * (&lambda - int(1)) + int(1)))?;
    println!(
        "D_0^{{4|9}} H_9[5/2] = {} · H_4[{}]",
        rational::format(&flowed.ratio_to(&target).unwrap()),
        rational::format(&(&r * (&lambda - int(1)) + int(1)))
    );

    let (b, a) = (int(2), frac(7, 3));
    let moved = |x: &polarlab::Rational| &r * (x - int(1)) + int(1);
    let h = hypergeometric(n, std::slice::from_ref(&b), std::slice::from_ref(&a))?;
    let flowed = polar_derivative_iter(&h, &zero, m)?;
    let target = hypergeometric(m, &[moved(&b)], &[moved(&a)])?;
    assert!(flowed.is_proportional_to(&target));
    let derived = polar_derivative_iter(&h, &ExtendedPoint::Infinity, m)?;
    assert!(derived.is_proportional_to(&hypergeometric(m, &[&r * &b], &[&r * &a])?));
    println!("hypergeometric [2; 7/3]: D_0 and ∂ flows verified for n = {n}, m = {m}");

    for n in [6usize, 11] {
        let d = polar_derivative_iter(&cosine_appell(n), &zero, n - 2)?;
        let c = d.ratio_to(&cosine_appell(n - 2)).unwrap();
        println!("D_0² C_{n} = {} · C_{}", rational::format(&c), n - 2);
    }
    Ok(())
}
