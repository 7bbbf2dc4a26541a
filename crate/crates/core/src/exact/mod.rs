//! Exact arithmetic: rationals, sparse bivariate polynomials, truncated
//! bivariate power series and trigonometric (Laurent) polynomials.

mod fourier;
mod poly;
mod rational;
mod series;

pub use fourier::FourierPoly;
pub use poly::Poly;
pub use rational::{binomial, parse_rational, pow2, rat, to_f64, wire, Rational};
pub use series::{BiSeries, Region, Var};
