//! The base valued field (Q, v_p).

use crate::arith::rational::vp_rational;
use crate::arith::{is_prime, Fp, Rational, Val};
use crate::error::{Error, Result};

/// Contract for a discrete valuation on a base field whose residue field is
/// a prime field. Only the p-adic valuation on Q implements it.
pub trait BaseValuation {
    fn value(&self, q: &Rational) -> Val;
    fn residue(&self, q: &Rational) -> Result<u64>;
    fn residue_field(&self) -> Fp;
}

/// `v_p` on Q, normalized so that `v_p(p) = 1`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct PAdicValuation {
    p: u64,
}

impl PAdicValuation {
    pub fn new(p: u64) -> Result<Self> {
        if !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        Ok(PAdicValuation { p })
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn vp(&self, q: &Rational) -> Val {
        match vp_rational(q, self.p) {
            Some(k) => Val::Finite(Rational::from_integer(k.into())),
            None => Val::Infinity,
        }
    }

    /// Reduction `O_v -> F_p`.
    pub fn residue_p(&self, q: &Rational) -> Result<u64> {
        Fp::new(self.p).from_rational(q).ok_or(Error::NegativeValue)
    }
}

impl BaseValuation for PAdicValuation {
    fn value(&self, q: &Rational) -> Val {
        self.vp(q)
    }

    fn residue(&self, q: &Rational) -> Result<u64> {
        self.residue_p(q)
    }

    fn residue_field(&self) -> Fp {
        Fp::new(self.p)
    }
}
