//! Finite free multiplicative convolution with `Q_{n,k}` reproduces iterated `D_0`,
//! up to a constant whose sign is `(−1)^{n−k}`. The derivative lands at formal degree `k`
//! while the convolution keeps degree `n`, so both are compared at degree `n`.

use polarlab::rational;
use polarlab::{finite_free_mult, polar_derivative_iter, q_polynomial, ExtendedPoint, FormalPolynomial};

fn main() -> polarlab::Result<()> {
    let p = FormalPolynomial::from_i64(&[3, -1, 4, -1, 5, 9]);
    let n = p.formal_degree();
    for k in 0..n {
        let lhs = polar_derivative_iter(&p, &ExtendedPoint::int(0), k)?.embed(n)?;
        let rhs = finite_free_mult(&p, &q_polynomial(n, k)?)?;
        let c = lhs.ratio_to(&rhs).expect("proportional");
        println!("n = {n}, k = {k}: D_0^{{k|n}} p = {} · (p ⊠_n Q_{{n,k}})", rational::format(&c));
    }
    Ok(())
}
