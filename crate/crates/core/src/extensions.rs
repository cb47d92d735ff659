//! Extensions `w_1..w_r` of `v_p` to a number field, one per field factor of
//! `O/J(O)`, with membership decided by reverse induction over the minimal
//! polynomial of the element.

use std::sync::Arc;

use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::algebra::{Decomposition, FpAlgebra, Quotient};
use crate::arith::lattice::lattice_canonical;
use crate::arith::rational::{p_power, serde_rational_rows, vp_rational};
use crate::arith::{Lattice, MatFp, PolyQ, Rational, Val};
use crate::error::{Error, Result};
use crate::field::{NFElem, NumberField};
use crate::order::Order;
use crate::trace::{Trace, TraceEvent};

/// `x = u / s` with `u, s` in the order and `s` outside the prime.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Witness {
    pub u: NFElem,
    pub s: NFElem,
}

/// Where a nonzero element sits relative to the valuation ring of `w`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Position {
    /// `w(x) = 0`; the witness expresses `x`.
    Unit(Witness),
    /// `w(x) > 0`; the witness expresses `x`.
    InMaximalIdeal(Witness),
    /// `w(x) < 0`; the witness expresses `x^{-1}`.
    Outside(Witness),
}

impl Position {
    pub fn is_integral(&self) -> bool {
        !matches!(self, Position::Outside(_))
    }

    pub fn name(&self) -> &'static str {
        match self {
            Position::Unit(_) => "Unit",
            Position::InMaximalIdeal(_) => "InMaximalIdeal",
            Position::Outside(_) => "Outside",
        }
    }
}

/// One extension `w` of `v_p` to `L`.
#[derive(Debug, Clone)]
pub struct ExtensionValuation {
    index: usize,
    e: u64,
    order: Arc<Order>,
    residue_field: FpAlgebra,
    /// `f × n`: coordinates of `O/pO` to coordinates of the residue field.
    projection: MatFp,
    prime: Lattice,
    local_idempotent: Vec<u64>,
}

/// JSON form of an extension.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExtensionDescriptor {
    pub index: usize,
    pub e: u64,
    pub f: usize,
    pub residue_field_dim: usize,
    #[serde(with = "serde_rational_rows")]
    pub prime_basis: Vec<Vec<Rational>>,
}

/// Everything produced along the way to the extensions.
#[derive(Debug, Clone)]
pub struct ExtensionSet {
    pub order: Arc<Order>,
    /// `O / pO`.
    pub algebra: FpAlgebra,
    /// `O / J(O)` as a quotient of `O / pO`.
    pub reduced: Quotient,
    pub decomposition: Decomposition,
    /// Idempotents of `O / pO` isolating the local factors.
    pub local_idempotents: Vec<Vec<u64>>,
    pub extensions: Vec<ExtensionValuation>,
}

impl ExtensionSet {
    pub fn reduced_dim(&self) -> usize {
        self.reduced.algebra.dim()
    }

    pub fn sum_ef(&self) -> u64 {
        self.extensions.iter().map(|w| w.e() * w.f() as u64).sum()
    }
}

/// Runs the full pipeline and returns all extensions.
pub fn extensions_of(field: &NumberField, p: u64) -> Result<Vec<ExtensionValuation>> {
    Ok(compute_extensions(field, p, &mut Trace::disabled())?.extensions)
}

pub fn compute_extensions(field: &NumberField, p: u64, trace: &mut Trace) -> Result<ExtensionSet> {
    let order = Arc::new(Order::p_maximal_order(field, p)?);
    let n = order.degree();
    let algebra = order.quotient_mod_p()?;
    let reduced = algebra.quotient_by(&algebra.nilradical())?;
    let decomposition = reduced.algebra.split_reduced(trace)?;
    let local_idempotents = algebra.lift_idempotents(&decomposition.idempotents, &reduced, trace);

    let pp = Rational::from_integer(p.into());
    let mut extensions = Vec::with_capacity(decomposition.components.len());
    let mut local_total = 0;
    for (i, comp) in decomposition.components.iter().enumerate() {
        let f = comp.dim();
        let local_dim = algebra.principal_ideal(&local_idempotents[i]).dim();
        local_total += local_dim;
        if local_dim % f != 0 {
            return Err(Error::Internal(format!(
                "local factor of dimension {local_dim} over residue degree {f}"
            )));
        }
        let projection = comp.projection.mul(&reduced.projection);
        let mut gens: Vec<Vec<Rational>> =
            projection.kernel().iter().map(|v| order.lift(v).into_coords()).collect();
        gens.extend(order.lattice().basis().iter().map(|b| b.iter().map(|x| x * &pp).collect()));
        let prime = lattice_canonical(&gens, n, p)?;
        extensions.push(ExtensionValuation {
            index: i + 1,
            e: (local_dim / f) as u64,
            order: Arc::clone(&order),
            residue_field: comp.algebra.clone(),
            projection,
            prime,
            local_idempotent: local_idempotents[i].clone(),
        });
    }
    if local_total != n {
        return Err(Error::Internal(format!("local factors have total dimension {local_total}, expected {n}")));
    }
    Ok(ExtensionSet { order, algebra, reduced, decomposition, local_idempotents, extensions })
}

impl ExtensionValuation {
    /// 1-based position in the decomposition.
    pub fn index(&self) -> usize {
        self.index
    }

    /// Ramification index.
    pub fn e(&self) -> u64 {
        self.e
    }

    /// Residue degree.
    pub fn f(&self) -> usize {
        self.residue_field.dim()
    }

    pub fn p(&self) -> u64 {
        self.order.p()
    }

    pub fn order(&self) -> &Order {
        &self.order
    }

    pub fn field(&self) -> &NumberField {
        self.order.field()
    }

    pub fn residue_field(&self) -> &FpAlgebra {
        &self.residue_field
    }

    /// The maximal ideal `m_w ∩ O` as a lattice.
    pub fn prime(&self) -> &Lattice {
        &self.prime
    }

    pub fn local_idempotent(&self) -> &[u64] {
        &self.local_idempotent
    }

    /// Projection `O -> κ_w`.
    pub fn residue_map(&self, x: &NFElem) -> Result<Vec<u64>> {
        Ok(self.projection.mul_vec(&self.order.reduce_mod_p(x)?))
    }

    pub fn projection(&self) -> &MatFp {
        &self.projection
    }

    /// Membership of an order element in the prime.
    pub fn in_prime(&self, x: &NFElem) -> Result<bool> {
        Ok(self.residue_map(x)?.iter().all(|&c| c == 0))
    }

    pub fn descriptor(&self) -> ExtensionDescriptor {
        ExtensionDescriptor {
            index: self.index,
            e: self.e,
            f: self.f(),
            residue_field_dim: self.residue_field.dim(),
            prime_basis: self.prime.basis().to_vec(),
        }
    }

    pub fn decide_position(&self, x: &NFElem) -> Result<Position> {
        self.decide_position_traced(x, &mut Trace::disabled())
    }

    pub fn decide_position_traced(&self, x: &NFElem, trace: &mut Trace) -> Result<Position> {
        if x.is_zero() {
            return Err(Error::ZeroElement);
        }
        let relation = self.field().min_poly(x);
        self.decide_with_relation(x, &relation, trace)
    }

    /// Reverse induction on `α_{j-1} = x·α_j + c_{j-1}` from `α_{n+1} = 0`,
    /// keeping `x·α_j` in the prime until either `c_{j-1}` is a unit
    /// (then `x ∈ R_I`) or `x·α_{j-1}` leaves the prime (then `x^{-1} ∈ R_I`).
    fn decide_with_relation(&self, x: &NFElem, relation: &PolyQ, trace: &mut Trace) -> Result<Position> {
        let k = self.field();
        let p = self.p();
        let a = relation.coeffs();
        let n = a.len() - 1;
        if a[0].is_zero() {
            return Err(Error::Internal("relation has zero constant term".into()));
        }
        let (_, pivot) = a
            .iter()
            .filter(|c| !c.is_zero())
            .map(|c| (vp_rational(c, p).unwrap(), c))
            .min_by_key(|(v, _)| *v)
            .unwrap();
        let pivot_inv = pivot.recip();
        let c: Vec<Rational> = a.iter().map(|ai| ai * &pivot_inv).collect();

        let mut alpha = k.zero();
        for j in (1..=n + 1).rev() {
            let cj = &c[j - 1];
            let mut alpha_prev = k.mul(x, &alpha);
            alpha_prev = &alpha_prev + &k.from_rational(cj.clone());
            let x_alpha_prev = k.mul(x, &alpha_prev);
            if vp_rational(cj, p) == Some(0) {
                trace.record(|| TraceEvent::Case1 { j });
                return self.classify_direct(x_alpha_prev, alpha_prev);
            }
            if !self.in_prime(&x_alpha_prev)? {
                trace.record(|| TraceEvent::Case2 { j });
                return self.classify_inverse(alpha_prev, x_alpha_prev);
            }
            trace.record(|| TraceEvent::Case3 { j });
            alpha = alpha_prev;
        }
        Err(Error::Internal("reverse induction did not terminate".into()))
    }

    /// `x = u/s` with `s` a unit at `w`.
    fn classify_direct(&self, u: NFElem, s: NFElem) -> Result<Position> {
        if self.in_prime(&s)? {
            return Err(Error::Internal("denominator of witness lies in the prime".into()));
        }
        let in_prime = self.in_prime(&u)?;
        let w = Witness { u, s };
        Ok(if in_prime { Position::InMaximalIdeal(w) } else { Position::Unit(w) })
    }

    /// `x^{-1} = u/s` with `s` a unit at `w`.
    fn classify_inverse(&self, u: NFElem, s: NFElem) -> Result<Position> {
        if self.in_prime(&u)? {
            Ok(Position::Outside(Witness { u, s }))
        } else {
            Ok(Position::Unit(Witness { u: s, s: u }))
        }
    }

    pub fn value(&self, x: &NFElem) -> Result<Val> {
        self.value_traced(x, &mut Trace::disabled())
    }

    /// `w(x) = m/e` where `m` is the largest `k` for which `x^e p^{-k}` is
    /// integral at `w`, found by bisection.
    pub fn value_traced(&self, x: &NFElem, trace: &mut Trace) -> Result<Val> {
        if x.is_zero() {
            return Ok(Val::Infinity);
        }
        let k = self.field();
        let p = self.p();
        let e = self.e as i64;
        let t = self
            .order
            .coords(x)
            .iter()
            .filter_map(|c| vp_rational(c, p))
            .min()
            .map_or(0, |m| (-m).max(0));
        let y = x.scale(&p_power(p, t));
        let norm_v = vp_rational(&k.norm(&y), p)
            .ok_or_else(|| Error::NotIrreducible("nonzero element with zero norm".into()))?;
        let mut lo = -e * t;
        let mut hi = e * norm_v;

        let z = k.pow(x, e)?;
        let base = k.min_poly(&z);
        let d = base.degree().unwrap();
        let integral_at = |shift: i64, trace: &mut Trace| -> Result<Position> {
            let c = p_power(p, -shift);
            let scaled = PolyQ::new(
                base.coeffs()
                    .iter()
                    .enumerate()
                    .map(|(i, m)| m * num_traits::pow(c.clone(), d - i))
                    .collect(),
            );
            self.decide_with_relation(&z.scale(&c), &scaled, trace)
        };
        if !integral_at(lo, trace)?.is_integral() {
            return Err(Error::Internal("value below the lattice bound".into()));
        }
        while lo < hi {
            let mid = lo + (hi - lo + 1) / 2;
            if integral_at(mid, trace)?.is_integral() {
                lo = mid;
            } else {
                hi = mid - 1;
            }
        }
        match integral_at(lo, trace)? {
            Position::Unit(_) => {}
            other => {
                return Err(Error::Internal(format!("expected a unit at the value, found {}", other.name())));
            }
        }
        Ok(Val::Finite(Rational::new(lo.into(), e.into())))
    }

    /// Residue class of `x` in `κ_w`.
    pub fn residue(&self, x: &NFElem) -> Result<Vec<u64>> {
        if x.is_zero() {
            return Ok(self.residue_field.zero());
        }
        let w = match self.decide_position(x)? {
            Position::Outside(_) => return Err(Error::NegativeValue),
            Position::Unit(w) | Position::InMaximalIdeal(w) => w,
        };
        let num = self.residue_map(&w.u)?;
        let den = self.residue_map(&w.s)?;
        let den_inv = self
            .residue_field
            .inverse(&den)
            .ok_or_else(|| Error::Internal("witness denominator has zero residue".into()))?;
        Ok(self.residue_field.mul(&num, &den_inv))
    }

    /// `e` recomputed from values: the lcm of the denominators of `w` on a
    /// basis of the prime.
    pub fn e_from_values(&self) -> Result<u64> {
        let mut l = num_bigint::BigInt::one();
        for g in self.prime.basis() {
            if let Val::Finite(q) = self.value(&NFElem::from_coords(g.clone()))? {
                l = l.lcm(q.denom());
            }
        }
        let l: u64 = num_traits::ToPrimitive::to_u64(&l.abs())
            .ok_or_else(|| Error::Internal("ramification index overflow".into()))?;
        Ok(l)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::rational::{frac, int};

    fn field(c: &[i64]) -> NumberField {
        NumberField::new(PolyQ::from_i64(c)).unwrap()
    }

    fn elem(k: &NumberField, xs: &[i64]) -> NFElem {
        k.element(xs.iter().map(|&x| int(x)).collect()).unwrap()
    }

    fn ef(ws: &[ExtensionValuation]) -> Vec<(u64, usize)> {
        ws.iter().map(|w| (w.e(), w.f())).collect()
    }

    #[test]
    fn gaussian_splitting() {
        let k = field(&[1, 0, 1]);
        assert_eq!(ef(&extensions_of(&k, 5).unwrap()), vec![(1, 1), (1, 1)]);
        assert_eq!(ef(&extensions_of(&k, 2).unwrap()), vec![(2, 1)]);
        assert_eq!(ef(&extensions_of(&k, 7).unwrap()), vec![(1, 2)]);
    }

    #[test]
    fn positions() {
        let k = field(&[1, 0, 1]);
        let ws = extensions_of(&k, 5).unwrap();
        let five = k.from_rational(int(5));
        for w in &ws {
            assert_eq!(w.decide_position(&five).unwrap().name(), "InMaximalIdeal");
            assert_eq!(w.decide_position(&k.one()).unwrap().name(), "Unit");
        }
        assert_eq!(ws[0].decide_position(&k.zero()), Err(Error::ZeroElement));
        // (2+θ)/(2-θ)
        let x = k.div(&elem(&k, &[2, 1]), &elem(&k, &[2, -1])).unwrap();
        assert_eq!(ws[0].residue(&k.gen()).unwrap(), vec![2]);
        assert_eq!(ws[1].decide_position(&x).unwrap().name(), "InMaximalIdeal");
        assert_eq!(ws[0].decide_position(&x).unwrap().name(), "Outside");
    }

    #[test]
    fn values() {
        let k = field(&[1, 0, 1]);
        let w2 = &extensions_of(&k, 2).unwrap()[0];
        assert_eq!(w2.value(&elem(&k, &[1, 1])).unwrap(), Val::Finite(frac(1, 2)));
        assert_eq!(w2.value(&k.from_rational(int(2))).unwrap(), Val::Finite(int(1)));
        assert_eq!(w2.value(&k.zero()).unwrap(), Val::Infinity);
        let ws = extensions_of(&k, 5).unwrap();
        let x = elem(&k, &[2, 1]);
        assert_eq!(ws[1].value(&x).unwrap(), Val::Finite(int(1)));
        assert_eq!(ws[0].value(&x).unwrap(), Val::Finite(int(0)));
        assert_eq!(ws[1].value(&k.from_rational(frac(1, 25))).unwrap(), Val::Finite(int(-2)));
    }

    #[test]
    fn residues() {
        let k = field(&[1, 0, 1]);
        let ws = extensions_of(&k, 5).unwrap();
        assert_eq!(ws[0].residue(&k.one()).unwrap(), vec![1]);
        assert_eq!(ws[0].residue(&k.from_rational(int(5))).unwrap(), vec![0]);
        assert_eq!(ws[0].residue(&k.from_rational(frac(1, 5))), Err(Error::NegativeValue));
        assert_eq!(ws[1].residue(&k.gen()).unwrap(), vec![3]);
    }

    #[test]
    fn ramification_cross_check() {
        for (c, p) in [(&[1, 0, 1][..], 2), (&[-1, -1, 0, 1][..], 23), (&[8, -2, 1, 1][..], 2)] {
            for w in extensions_of(&field(c), p).unwrap() {
                assert_eq!(w.e_from_values().unwrap(), w.e());
            }
        }
    }

    #[test]
    fn descriptor_round_trip() {
        let w = &extensions_of(&field(&[8, -2, 1, 1]), 2).unwrap()[0];
        let d = w.descriptor();
        let s = serde_json::to_string(&d).unwrap();
        assert_eq!(serde_json::from_str::<ExtensionDescriptor>(&s).unwrap(), d);
    }
}
