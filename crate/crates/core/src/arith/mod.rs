//! Exact arithmetic: rationals, extended values, polynomials, dense matrices
//! over Q and F_p, and canonical Z_(p)-lattice bases.

pub mod fp;
pub mod lattice;
pub mod matrix;
pub mod poly;
pub mod rational;
pub mod val;

pub use fp::{is_prime, Fp};
pub use lattice::Lattice;
pub use matrix::{MatFp, MatQ};
pub use poly::{PolyFp, PolyQ};
pub use rational::Rational;
pub use val::Val;
