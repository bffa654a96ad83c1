//! `F_a^s F_b^t = F_b^{s′} F_a^{t′}` with `s′ = 1 + st − s`, `t′ = st/s′`, checked on free
//! Poisson closed forms, plus the semigroup `B_t^{b,a} = F_b^{1+t} F_a^{1/(1+t)}`.

use polarlab::measures::{bn_semigroup, closed_form_power, commute_params};
use polarlab::rational::{self, frac, int};
use polarlab::{ExtendedMeasure, ExtendedPoint};

fn main() -> polarlab::Result<()> {
    let (zero, inf) = (ExtendedPoint::int(0), ExtendedPoint::Infinity);
    let mu = ExtendedMeasure::free_poisson(int(2))?;
    let (s, t) = (int(2), int(2));
    let c = commute_params(&s, &t)?;
    println!("s′ = {}, t′ = {}", rational::format(&c.s_prime), rational::format(&c.t_prime));
    let pow = |m: &ExtendedMeasure, a: &ExtendedPoint, u| closed_form_power(m, a, u).map(Option::unwrap);
    let lhs = pow(&pow(&mu, &inf, &t)?, &zero, &s)?;
    let rhs = pow(&pow(&mu, &zero, &c.t_prime)?, &inf, &c.s_prime)?;
    println!("F_0^2 F^2 π_2        = {}", lhs.as_family().unwrap());
    println!("F^s′ F_0^t′ π_2      = {}", rhs.as_family().unwrap());

    let (p, q) = (frac(1, 2), frac(3, 4));
    let once = bn_semigroup(&mu, &inf, &zero, &(&p + &q))?;
    let twice = bn_semigroup(&bn_semigroup(&mu, &inf, &zero, &q)?, &inf, &zero, &p)?;
    println!("B_(5/4) π_2 = {}  (composed: {})", once.as_family().unwrap(), twice.as_family().unwrap());
    let cauchy = ExtendedMeasure::cauchy();
    println!("B_1^(∞,0) Cauchy = {}", bn_semigroup(&cauchy, &inf, &zero, &int(1))?.as_family().unwrap());
    Ok(())
}
