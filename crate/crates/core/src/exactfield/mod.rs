//! Exact arithmetic: rationals, multivariate polynomials, rational functions
//! and the projective line with its Möbius action.

pub mod fingerprint;
pub mod parse;
pub mod poly;
pub mod projective;
pub mod ratfun;
pub mod rational;

pub use parse::{parse_point, parse_ratfun};
pub use poly::{Monomial, Poly};
pub use projective::{Mobius, ProjPoint};
pub use ratfun::RatFun;
pub use rational::{int, rat, GaussRat, Rational};
