//! Finite-dimensional commutative unital algebras over F_p.
//!
//! Elements are coordinate vectors in a fixed basis `b_0..b_{d-1}`; the
//! algebra is given by structure constants `b_i b_j = Σ_k c_{ijk} b_k`.

use crate::arith::matrix::span_basis_fp;
use crate::arith::{Fp, MatFp, PolyFp};
use crate::error::{Error, Result};
use crate::trace::{Trace, TraceEvent};

/// Element search in [`FpAlgebra::split_reduced`] refuses algebras with more
/// elements than this.
const MAX_SEARCH: u128 = 1 << 36;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FpAlgebra {
    field: Fp,
    dim: usize,
    table: Vec<u64>,
    unit: Vec<u64>,
}

/// An ideal, stored as a row-reduced F_p basis.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AlgIdeal {
    dim: usize,
    basis: Vec<Vec<u64>>,
}

/// Quotient algebra together with the projection and a linear section.
#[derive(Debug, Clone)]
pub struct Quotient {
    pub algebra: FpAlgebra,
    /// `q × d` matrix of the surjection.
    pub projection: MatFp,
    /// `d × q` matrix of a linear section of the projection.
    pub lift: MatFp,
}

/// A factor `A·e` of an algebra, with its inclusion and the projection `x -> x·e`.
#[derive(Debug, Clone)]
pub struct Component {
    pub algebra: FpAlgebra,
    /// `d × f`: component coordinates to parent coordinates.
    pub embedding: MatFp,
    /// `f × d`: parent coordinates to component coordinates.
    pub projection: MatFp,
}

impl Component {
    pub fn dim(&self) -> usize {
        self.algebra.dim()
    }
}

/// Decomposition of a reduced algebra into a product of fields.
#[derive(Debug, Clone)]
pub struct Decomposition {
    pub idempotents: Vec<Vec<u64>>,
    pub components: Vec<Component>,
}

impl AlgIdeal {
    pub fn new(dim: usize, field: Fp, generators: &[Vec<u64>]) -> Self {
        AlgIdeal { dim, basis: span_basis_fp(field, dim, generators) }
    }

    pub fn basis(&self) -> &[Vec<u64>] {
        &self.basis
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn is_zero(&self) -> bool {
        self.basis.is_empty()
    }

    pub fn contains(&self, field: Fp, x: &[u64]) -> bool {
        let mut rows = self.basis.clone();
        rows.push(x.to_vec());
        MatFp::from_rows(field, self.dim, &rows).rank() == self.basis.len()
    }
}

impl FpAlgebra {
    /// Builds an algebra from structure constants indexed `(i*d + j)*d + k`.
    pub fn new(field: Fp, dim: usize, table: Vec<u64>, unit: Vec<u64>) -> Result<Self> {
        if table.len() != dim * dim * dim || unit.len() != dim {
            return Err(Error::DimensionMismatch("structure constants do not match dimension".into()));
        }
        let a = FpAlgebra { field, dim, table, unit };
        for i in 0..dim {
            for j in 0..i {
                if a.basis_product(i, j) != a.basis_product(j, i) {
                    return Err(Error::Internal(format!("algebra not commutative at ({i},{j})")));
                }
            }
            if a.mul(&a.unit, &a.basis_vec(i)) != a.basis_vec(i) {
                return Err(Error::Internal("unit does not act as identity".into()));
            }
        }
        #[cfg(debug_assertions)]
        a.check_associative()?;
        Ok(a)
    }

    /// Builds an algebra from a closure giving the product of basis elements.
    pub fn from_products(
        field: Fp,
        dim: usize,
        unit: Vec<u64>,
        mut product: impl FnMut(usize, usize) -> Vec<u64>,
    ) -> Result<Self> {
        let mut table = vec![0u64; dim * dim * dim];
        for i in 0..dim {
            for j in 0..dim {
                let v = product(i, j);
                table[(i * dim + j) * dim..(i * dim + j + 1) * dim].copy_from_slice(&v);
            }
        }
        FpAlgebra::new(field, dim, table, unit)
    }

    /// `F_p[t]/(g)` for monic `g`, in the basis `1, t, ..., t^{deg-1}`.
    pub fn from_poly(g: &PolyFp) -> Result<Self> {
        let field = g.field();
        let d = g.degree().filter(|&d| d >= 1).ok_or_else(|| {
            Error::DimensionMismatch("modulus must have positive degree".into())
        })?;
        if g.coeff(d) != 1 {
            return Err(Error::DimensionMismatch("modulus must be monic".into()));
        }
        let mut unit = vec![0; d];
        unit[0] = 1;
        FpAlgebra::from_products(field, d, unit, |i, j| {
            let mut m = vec![0; i + j + 1];
            m[i + j] = 1;
            let r = PolyFp::new(field, m).div_rem(g).1;
            (0..d).map(|k| r.coeff(k)).collect()
        })
    }

    fn check_associative(&self) -> Result<()> {
        let d = self.dim;
        for i in 0..d {
            for j in 0..d {
                let ij = self.basis_product(i, j);
                for k in 0..d {
                    let left = self.mul(&ij, &self.basis_vec(k));
                    let right = self.mul(&self.basis_vec(i), &self.basis_product(j, k));
                    if left != right {
                        return Err(Error::Internal(format!("algebra not associative at ({i},{j},{k})")));
                    }
                }
            }
        }
        Ok(())
    }

    pub fn field(&self) -> Fp {
        self.field
    }

    pub fn p(&self) -> u64 {
        self.field.p()
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn unit(&self) -> &[u64] {
        &self.unit
    }

    pub fn zero(&self) -> Vec<u64> {
        vec![0; self.dim]
    }

    pub fn basis_vec(&self, i: usize) -> Vec<u64> {
        let mut v = self.zero();
        v[i] = 1;
        v
    }

    pub fn basis_product(&self, i: usize, j: usize) -> Vec<u64> {
        let d = self.dim;
        self.table[(i * d + j) * d..(i * d + j + 1) * d].to_vec()
    }

    pub fn structure_constant(&self, i: usize, j: usize, k: usize) -> u64 {
        self.table[(i * self.dim + j) * self.dim + k]
    }

    pub fn add(&self, x: &[u64], y: &[u64]) -> Vec<u64> {
        x.iter().zip(y).map(|(&a, &b)| self.field.add(a, b)).collect()
    }

    pub fn sub(&self, x: &[u64], y: &[u64]) -> Vec<u64> {
        x.iter().zip(y).map(|(&a, &b)| self.field.sub(a, b)).collect()
    }

    pub fn scale(&self, c: u64, x: &[u64]) -> Vec<u64> {
        x.iter().map(|&a| self.field.mul(c, a)).collect()
    }

    pub fn mul(&self, x: &[u64], y: &[u64]) -> Vec<u64> {
        let f = self.field;
        let d = self.dim;
        let mut out = vec![0u64; d];
        for (i, &xi) in x.iter().enumerate() {
            if xi == 0 {
                continue;
            }
            for (j, &yj) in y.iter().enumerate() {
                if yj == 0 {
                    continue;
                }
                let c = f.mul(xi, yj);
                let base = (i * d + j) * d;
                for (k, o) in out.iter_mut().enumerate() {
                    let s = self.table[base + k];
                    if s != 0 {
                        *o = f.add(*o, f.mul(c, s));
                    }
                }
            }
        }
        out
    }

    pub fn pow(&self, x: &[u64], mut e: u64) -> Vec<u64> {
        let mut acc = self.unit.clone();
        let mut sq = x.to_vec();
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(&acc, &sq);
            }
            e >>= 1;
            if e > 0 {
                sq = self.mul(&sq, &sq);
            }
        }
        acc
    }

    /// Matrix of `y -> x*y`.
    pub fn mult_matrix(&self, x: &[u64]) -> MatFp {
        let cols: Vec<Vec<u64>> = (0..self.dim).map(|j| self.mul(x, &self.basis_vec(j))).collect();
        MatFp::from_cols(self.field, self.dim, &cols)
    }

    pub fn is_unit(&self, x: &[u64]) -> bool {
        self.mult_matrix(x).is_invertible()
    }

    pub fn inverse(&self, x: &[u64]) -> Option<Vec<u64>> {
        if !self.is_unit(x) {
            return None;
        }
        self.mult_matrix(x).solve(&self.unit)
    }

    /// Smallest `m` with `p^m >= dim`.
    pub fn frobenius_exponent(&self) -> u32 {
        let mut m = 0;
        let mut pm: u128 = 1;
        while pm < self.dim as u128 {
            pm *= self.p() as u128;
            m += 1;
        }
        m
    }

    /// Matrix of the F_p-linear map `x -> x^{p^m}`.
    pub fn frobenius_matrix(&self, m: u32) -> MatFp {
        let cols: Vec<Vec<u64>> = (0..self.dim)
            .map(|i| {
                let mut v = self.basis_vec(i);
                for _ in 0..m {
                    v = self.pow(&v, self.p());
                }
                v
            })
            .collect();
        MatFp::from_cols(self.field, self.dim, &cols)
    }

    /// The ideal of nilpotent elements: kernel of the `m`-fold Frobenius, `p^m >= dim`.
    pub fn nilradical(&self) -> AlgIdeal {
        let kernel = self.frobenius_matrix(self.frobenius_exponent()).kernel();
        AlgIdeal::new(self.dim, self.field, &kernel)
    }

    pub fn is_reduced(&self) -> bool {
        self.nilradical().is_zero()
    }

    pub fn ideal(&self, generators: &[Vec<u64>]) -> AlgIdeal {
        AlgIdeal::new(self.dim, self.field, generators)
    }

    /// The principal ideal `A·x`.
    pub fn principal_ideal(&self, x: &[u64]) -> AlgIdeal {
        let gens: Vec<Vec<u64>> = (0..self.dim).map(|k| self.mul(x, &self.basis_vec(k))).collect();
        self.ideal(&gens)
    }

    /// `A / I` with induced structure constants.
    pub fn quotient_by(&self, ideal: &AlgIdeal) -> Result<Quotient> {
        let f = self.field;
        let d = self.dim;
        if ideal.contains(f, &self.unit) {
            return Err(Error::IllegalIdeal("ideal contains the unit".into()));
        }
        for v in ideal.basis() {
            for k in 0..d {
                if !ideal.contains(f, &self.mul(v, &self.basis_vec(k))) {
                    return Err(Error::IllegalIdeal("subspace is not closed under multiplication".into()));
                }
            }
        }
        let pivots: Vec<usize> = ideal
            .basis()
            .iter()
            .map(|row| row.iter().position(|&x| x != 0).unwrap())
            .collect();
        let complement: Vec<usize> = (0..d).filter(|c| !pivots.contains(c)).collect();
        let q = complement.len();
        let reduce = |x: &[u64]| -> Vec<u64> {
            let mut y = x.to_vec();
            for (row, &pc) in ideal.basis().iter().zip(&pivots) {
                let c = y[pc];
                if c != 0 {
                    for (yk, &rk) in y.iter_mut().zip(row) {
                        *yk = f.sub(*yk, f.mul(c, rk));
                    }
                }
            }
            complement.iter().map(|&k| y[k]).collect()
        };
        let proj_cols: Vec<Vec<u64>> = (0..d).map(|k| reduce(&self.basis_vec(k))).collect();
        let projection = MatFp::from_cols(f, q, &proj_cols);
        let lift_cols: Vec<Vec<u64>> = complement.iter().map(|&k| self.basis_vec(k)).collect();
        let lift = MatFp::from_cols(f, d, &lift_cols);
        let algebra = FpAlgebra::from_products(f, q, reduce(&self.unit), |a, b| {
            reduce(&self.basis_product(complement[a], complement[b]))
        })?;
        Ok(Quotient { algebra, projection, lift })
    }

    /// The factor `A·e` for an idempotent `e`, with basis starting at `e`.
    pub fn principal_component(&self, e: &[u64]) -> Result<Component> {
        let f = self.field;
        let d = self.dim;
        let mut basis: Vec<Vec<u64>> = Vec::new();
        for cand in std::iter::once(e.to_vec()).chain((0..d).map(|k| self.mul(e, &self.basis_vec(k)))) {
            let mut trial = basis.clone();
            trial.push(cand.clone());
            if MatFp::from_rows(f, d, &trial).rank() == trial.len() {
                basis = trial;
            }
        }
        let s = basis.len();
        let embedding = MatFp::from_cols(f, d, &basis);
        let coords = |y: &[u64]| -> Result<Vec<u64>> {
            embedding
                .solve(y)
                .ok_or_else(|| Error::Internal("product left the component".into()))
        };
        let proj_cols = (0..d)
            .map(|k| coords(&self.mul(e, &self.basis_vec(k))))
            .collect::<Result<Vec<_>>>()?;
        let projection = MatFp::from_cols(f, s, &proj_cols);
        let mut table = vec![0u64; s * s * s];
        for a in 0..s {
            for b in 0..s {
                let c = coords(&self.mul(&basis[a], &basis[b]))?;
                table[(a * s + b) * s..(a * s + b + 1) * s].copy_from_slice(&c);
            }
        }
        let mut unit = vec![0u64; s];
        unit[0] = 1;
        let algebra = FpAlgebra::new(f, s, table, unit)?;
        Ok(Component { algebra, embedding, projection })
    }

    /// Monic polynomial of least degree with `g(z) = 0`.
    pub fn min_relation(&self, z: &[u64]) -> PolyFp {
        let f = self.field;
        let mut powers = vec![self.unit.clone()];
        loop {
            let next = self.mul(powers.last().unwrap(), z);
            let m = MatFp::from_cols(f, self.dim, &powers);
            if let Some(sol) = m.solve(&next) {
                let mut coeffs: Vec<u64> = sol.into_iter().map(|c| f.neg(c)).collect();
                coeffs.push(1);
                return PolyFp::new(f, coeffs);
            }
            powers.push(next);
        }
    }

    pub fn eval_poly(&self, g: &PolyFp, z: &[u64]) -> Vec<u64> {
        g.coeffs().iter().rev().fold(self.zero(), |acc, &c| {
            let r = self.mul(&acc, z);
            self.add(&r, &self.scale(c, &self.unit))
        })
    }

    /// All nonzero elements in lexicographic order of coordinates.
    fn lex_elements(&self) -> Result<impl Iterator<Item = Vec<u64>> + '_> {
        let total = (self.p() as u128).checked_pow(self.dim as u32).unwrap_or(u128::MAX);
        if total > MAX_SEARCH {
            return Err(Error::Internal(format!(
                "element search over {}^{} elements is too large",
                self.p(),
                self.dim
            )));
        }
        let p = self.p();
        let d = self.dim;
        Ok((1..total).map(move |mut idx| {
            let mut v = vec![0u64; d];
            for k in (0..d).rev() {
                v[k] = (idx % p as u128) as u64;
                idx /= p as u128;
            }
            v
        }))
    }

    /// First nonzero non-invertible element: basis elements first, then a
    /// lexicographic sweep. `None` means the algebra is a field.
    pub fn find_non_unit(&self) -> Result<Option<Vec<u64>>> {
        if let Some(b) = (0..self.dim).map(|i| self.basis_vec(i)).find(|b| !self.is_unit(b)) {
            return Ok(Some(b));
        }
        Ok(self.lex_elements()?.find(|x| !self.is_unit(x)))
    }

    /// Splits a reduced algebra into fields by repeatedly extracting the
    /// idempotent built from a non-invertible element's minimal relation.
    pub fn split_reduced(&self, trace: &mut Trace) -> Result<Decomposition> {
        let nil = self.nilradical();
        if !nil.is_zero() {
            return Err(Error::NotReduced(nil.dim()));
        }
        let mut parts = Vec::new();
        split_rec(self, trace, &mut parts)?;
        let idempotents = parts.iter().map(|c| c.embedding.mul_vec(c.algebra.unit())).collect();
        Ok(Decomposition { idempotents, components: parts })
    }

    /// Lifts orthogonal idempotents of `A / nilradical` to `A` by `m`-fold Frobenius.
    pub fn lift_idempotents(
        &self,
        reduced: &[Vec<u64>],
        quotient: &Quotient,
        trace: &mut Trace,
    ) -> Vec<Vec<u64>> {
        let m = self.frobenius_exponent();
        reduced
            .iter()
            .map(|e| {
                let mut x = quotient.lift.mul_vec(e);
                for iteration in 1..=m as usize {
                    x = self.pow(&x, self.p());
                    trace.record(|| TraceEvent::Lift { iteration });
                }
                x
            })
            .collect()
    }
}

fn split_rec(alg: &FpAlgebra, trace: &mut Trace, out: &mut Vec<Component>) -> Result<()> {
    let field = alg.field();
    let identity = || Component {
        algebra: alg.clone(),
        embedding: MatFp::identity(field, alg.dim()),
        projection: MatFp::identity(field, alg.dim()),
    };
    if alg.dim() == 1 {
        trace.record(|| TraceEvent::Field { dim: 1 });
        out.push(identity());
        return Ok(());
    }
    let Some(z) = alg.find_non_unit()? else {
        trace.record(|| TraceEvent::Field { dim: alg.dim() });
        out.push(identity());
        return Ok(());
    };
    let relation = alg.min_relation(&z);
    let j = relation
        .coeffs()
        .iter()
        .position(|&c| c != 0)
        .expect("nonzero relation");
    if j == 0 {
        return Err(Error::Internal("non-invertible element has invertible relation".into()));
    }
    let cj_inv = field.inv(relation.coeff(j)).unwrap();
    let g = PolyFp::new(
        field,
        relation.coeffs()[j..].iter().map(|&c| field.mul(c, cj_inv)).collect(),
    );
    let e = alg.eval_poly(&g, &z);
    if alg.mul(&e, &e) != e || e == alg.zero() || e == alg.unit() {
        return Err(Error::NotReduced(alg.nilradical().dim()));
    }
    trace.record(|| TraceEvent::Split { z: z.clone(), relation: relation.clone(), idempotent: e.clone() });
    let complement = alg.sub(alg.unit(), &e);
    for u in [e, complement] {
        let part = alg.principal_component(&u)?;
        let mut children = Vec::new();
        split_rec(&part.algebra, trace, &mut children)?;
        for child in children {
            out.push(Component {
                embedding: part.embedding.mul(&child.embedding),
                projection: child.projection.mul(&part.projection),
                algebra: child.algebra,
            });
        }
    }
    Ok(())
}
