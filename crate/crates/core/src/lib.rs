//! Polar differentiation of real-rooted polynomials and the polar free convolution
//! powers it induces on probability measures over the extended real line.
//!
//! The crate is organised bottom-up:
//!
//! - [`poly`], [`mobius`], [`families`]: exact polynomials with a formal degree, the
//!   polar derivative `D_α`, Möbius pushforward, finite free multiplicative convolution
//!   and the Laguerre / hypergeometric / cosine-Appell families.
//! - [`roots`]: exact real-rootedness decisions, certified root isolation, empirical
//!   root distributions, interlacing and domination.
//! - [`measures`]: measures on `ℝ ∪ {∞}`, the powers `F^t` and `F_a^t`, atom laws,
//!   the commuting-parameter algebra and the `B_t^{b,a}` semigroup.
//! - [`transforms`]: Cauchy and R-transforms, densities and PDE residual checks.
//! - [`lab`]: declarative convergence experiments with CSV/JSON output.
//!
//! See the `examples/` directory of this crate for one runnable program per capability.

// `!(x > 0.0)` style guards are deliberate: they also reject NaN.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod error;
pub mod families;
pub mod lab;
pub mod measures;
pub mod mobius;
pub mod point;
pub mod poly;
pub mod quad;
pub mod rational;
pub mod roots;
pub mod transforms;

pub use error::{Error, Result};
pub use families::{cosine_appell, hypergeometric, laguerre, q_polynomial};
pub use measures::{ExtendedMeasure, Family, FamilyKind};
pub use mobius::MobiusMap;
pub use point::ExtendedPoint;
pub use poly::{
    dilate, finite_free_mult, mobius_pushforward, polar_derivative, polar_derivative_iter, shift, FormalPolynomial,
};
pub use rational::Rational;
pub use roots::{dominates, empirical_distribution, interlaces, is_real_rooted, isolate_roots, RootProfile};
