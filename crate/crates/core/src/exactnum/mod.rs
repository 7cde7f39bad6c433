//! Exact rational arithmetic with p-adic valuations, and univariate
//! polynomials over ℚ and over prime fields.

pub mod factor;
pub mod fp;
pub mod poly;
pub mod rational;

pub use factor::factor_degree_d;
pub use fp::PrimeFieldPolynomial;
pub use poly::{RationalFunction, RationalPolynomial};
pub use rational::{is_prime, LocalFieldContext, Rational, Valuation};
