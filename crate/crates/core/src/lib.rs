//! Exact computation of all extensions of a p-adic valuation on Q to a
//! number field `L = Q[x]/(f)`.
//!
//! The pipeline builds the p-maximal order `O` (a model of the integral
//! closure of `Z_(p)` in `L`), reduces it modulo p, discards the nilradical,
//! and splits the reduced quotient into residue fields with explicit
//! idempotents. Each field factor is one extension `w_i`; membership in its
//! valuation ring is decided by a reverse induction on the minimal polynomial
//! of the element, and values are read off from that decision.

pub mod algebra;
pub mod arith;
pub mod base;
pub mod cli;
pub mod error;
pub mod extensions;
pub mod field;
pub mod order;
pub mod parse;
pub mod theorems;
pub mod trace;

pub use error::{Error, Result};
