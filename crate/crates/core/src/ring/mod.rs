//! Exact arithmetic: rationals, the graded ring ℚ[E1, E2] with the lasagna
//! generators `A1, A0^{±1}`, and balanced quantum integers.

pub(crate) mod parse;
mod poly;
mod qlaurent;
mod rational;

pub use parse::parse_poly;
pub use poly::{delta, Gen, Grading, Monomial, Poly, NGENS};
pub use qlaurent::{qbinom, qfactorial, qint, QLaurent};
pub use rational::Rational;
