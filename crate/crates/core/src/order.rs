//! Orders of a number field as Z_(p)-lattices, and p-maximalization by the
//! Round-2 enlargement `O <- {x : x·rad(O) ⊆ rad(O)}`.

use num_traits::{One, Zero};

use crate::algebra::FpAlgebra;
use crate::arith::lattice::lattice_canonical;
use crate::arith::rational::{p_power, vp_rational};
use crate::arith::{is_prime, Fp, Lattice, MatFp, Rational};
use crate::error::{Error, Result};
use crate::field::{NFElem, NumberField};

/// A full-rank unital subring of `L` localized at p. Basis vectors are
/// power-basis coordinates; the first basis vector is always 1.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Order {
    field: NumberField,
    p: u64,
    lattice: Lattice,
}

impl Order {
    /// The equation order `Z_(p)[θ]`.
    pub fn equation_order(field: &NumberField, p: u64) -> Result<Self> {
        if !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        Ok(Order { field: field.clone(), p, lattice: Lattice::standard(field.degree(), p) })
    }

    /// Wraps a lattice, checking that it contains 1 and is closed under products.
    pub fn from_lattice(field: &NumberField, lattice: Lattice) -> Result<Self> {
        let o = Order { field: field.clone(), p: lattice.p(), lattice };
        if !o.contains(&field.one()) {
            return Err(Error::IllegalIdeal("lattice does not contain 1".into()));
        }
        if !o.is_multiplicatively_closed() {
            return Err(Error::IllegalIdeal("lattice is not closed under multiplication".into()));
        }
        Ok(o)
    }

    pub fn field(&self) -> &NumberField {
        &self.field
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn degree(&self) -> usize {
        self.field.degree()
    }

    pub fn lattice(&self) -> &Lattice {
        &self.lattice
    }

    pub fn basis(&self) -> Vec<NFElem> {
        self.lattice.basis().iter().map(|b| NFElem::from_coords(b.clone())).collect()
    }

    /// Basis vectors as rows of power-basis coordinates.
    pub fn basis_rows(&self) -> Vec<Vec<Rational>> {
        self.lattice.basis().to_vec()
    }

    /// `v_p([O : Z_(p)[θ]])`.
    pub fn index_exponent(&self) -> i64 {
        -self.lattice.det_exponent()
    }

    pub fn coords(&self, x: &NFElem) -> Vec<Rational> {
        self.lattice.coords(x.coords())
    }

    pub fn contains(&self, x: &NFElem) -> bool {
        self.lattice.contains(x.coords())
    }

    pub fn element(&self, coeffs: &[Rational]) -> NFElem {
        NFElem::from_coords(self.lattice.combine(coeffs))
    }

    /// Coordinates of `x` modulo `p·O`; fails if `x` is not in the order.
    pub fn reduce_mod_p(&self, x: &NFElem) -> Result<Vec<u64>> {
        let fp = Fp::new(self.p);
        self.coords(x)
            .iter()
            .map(|c| fp.from_rational(c))
            .collect::<Option<Vec<_>>>()
            .ok_or_else(|| Error::Internal(format!("{x} is not in the order")))
    }

    /// Lift of a vector of `O/pO` using representatives in `0..p`.
    pub fn lift(&self, v: &[u64]) -> NFElem {
        let coeffs: Vec<Rational> = v.iter().map(|&c| Rational::from_integer(c.into())).collect();
        self.element(&coeffs)
    }

    pub fn is_multiplicatively_closed(&self) -> bool {
        let b = self.basis();
        (0..b.len()).all(|i| (i..b.len()).all(|j| self.contains(&self.field.mul(&b[i], &b[j]))))
    }

    /// `O / pO` with structure constants from the basis products.
    pub fn quotient_mod_p(&self) -> Result<FpAlgebra> {
        let fp = Fp::new(self.p);
        let basis = self.basis();
        let n = basis.len();
        let mut table = vec![0u64; n * n * n];
        for i in 0..n {
            for j in i..n {
                let prod = self.reduce_mod_p(&self.field.mul(&basis[i], &basis[j]))?;
                table[(i * n + j) * n..(i * n + j + 1) * n].copy_from_slice(&prod);
                table[(j * n + i) * n..(j * n + i + 1) * n].copy_from_slice(&prod);
            }
        }
        let unit = self.reduce_mod_p(&self.field.one())?;
        FpAlgebra::new(fp, n, table, unit)
    }

    /// Preimage in `O` of the nilradical of `O/pO`.
    pub fn p_radical(&self) -> Result<Lattice> {
        let nil = self.quotient_mod_p()?.nilradical();
        let pp = Rational::from_integer(self.p.into());
        let mut gens: Vec<Vec<Rational>> =
            nil.basis().iter().map(|v| self.lift(v).into_coords()).collect();
        gens.extend(self.lattice.basis().iter().map(|b| b.iter().map(|x| x * &pp).collect()));
        lattice_canonical(&gens, self.degree(), self.p)
    }

    /// `{x ∈ L : x·I ⊆ I}` for an ideal `I ⊇ pO`.
    pub fn ring_of_multipliers(&self, ideal: &Lattice) -> Result<Order> {
        let n = self.degree();
        let fp = Fp::new(self.p);
        let pp = Rational::from_integer(self.p.into());
        let p_o = self.lattice.scaled(&pp);
        if !ideal.contains_lattice(&p_o) || !self.lattice.contains_lattice(ideal) {
            return Err(Error::IllegalIdeal("expected pO ⊆ I ⊆ O".into()));
        }
        let basis = self.basis();
        // column k: coordinates of b_k·g_j in the basis of I, mod p, stacked over j
        let mut cols = vec![Vec::with_capacity(n * n); n];
        for g in ideal.basis() {
            let g = NFElem::from_coords(g.clone());
            for (k, b) in basis.iter().enumerate() {
                for c in ideal.coords(self.field.mul(b, &g).coords()) {
                    let r = fp
                        .from_rational(&c)
                        .ok_or_else(|| Error::IllegalIdeal("not an ideal of the order".into()))?;
                    cols[k].push(r);
                }
            }
        }
        let m = MatFp::from_cols(fp, n * n, &cols);
        let inv_p = pp.recip();
        let mut gens = self.lattice.basis().to_vec();
        for c in m.kernel() {
            gens.push(self.lift(&c).coords().iter().map(|x| x * &inv_p).collect());
        }
        let lattice = lattice_canonical(&gens, n, self.p)?;
        Ok(Order { field: self.field.clone(), p: self.p, lattice })
    }

    /// Iterates the Round-2 step from the equation order until it stabilizes.
    pub fn p_maximal_order(field: &NumberField, p: u64) -> Result<Order> {
        let disc = field.discriminant();
        if disc.is_zero() {
            return Err(Error::NotIrreducible(format!("{} has a repeated factor", field.poly())));
        }
        let bound = vp_rational(&disc, p).unwrap_or(0) / 2 + 1;
        let mut o = Order::equation_order(field, p)?;
        for _ in 0..=bound {
            let rad = o.p_radical()?;
            let next = o.ring_of_multipliers(&rad)?;
            if next == o {
                return Ok(o);
            }
            o = next;
        }
        Err(Error::Internal(format!(
            "Round-2 enlargement did not stabilize within {} steps; {} may be reducible",
            bound + 1,
            field.poly()
        )))
    }

    /// `p^k · O` as a lattice.
    pub fn scaled_lattice(&self, k: i64) -> Lattice {
        self.lattice.scaled(&p_power(self.p, k))
    }

    pub fn is_one_first(&self) -> bool {
        self.lattice.basis()[0].iter().enumerate().all(|(i, x)| {
            if i == 0 {
                x.is_one()
            } else {
                x.is_zero()
            }
        })
    }
}
