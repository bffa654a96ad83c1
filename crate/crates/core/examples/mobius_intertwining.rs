//! Möbius pushforwards intertwine polar derivatives: `T_*(D_α p) ∝ D_{T(α)}(T_* p)`.

use polarlab::rational::{self, int};
use polarlab::{mobius_pushforward, polar_derivative, ExtendedPoint, FormalPolynomial, MobiusMap};

fn main() -> polarlab::Result<()> {
    let p = FormalPolynomial::from_i64(&[6, -5, -2, 1]);
    let t = MobiusMap::new(int(2), int(1), int(1), int(-1))?; // x ↦ (2x + 1)/(x − 1)
    for alpha in [ExtendedPoint::int(0), ExtendedPoint::int(1), ExtendedPoint::Infinity] {
        let lhs = mobius_pushforward(&polar_derivative(&p, &alpha)?, &t)?;
        let rhs = polar_derivative(&mobius_pushforward(&p, &t)?, &t.apply(&alpha))?;
        let c = lhs.ratio_to(&rhs).expect("proportional");
        println!(
            "α = {alpha:>3}  T(α) = {:>3}  T_*(D_α p) = {} · D_T(α)(T_* p)",
            t.apply(&alpha),
            rational::format(&c)
        );
    }
    Ok(())
}
