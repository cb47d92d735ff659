//! Full-rank lattices over Z_(p), the integers localized at p.
//!
//! A lattice is stored by its canonical basis: basis vector `j` has zeros
//! below position `j`, the entry at `j` is a power of p, and each entry above
//! a pivot is reduced into `Z[1/p] ∩ [0, pivot)` of that pivot's row.
//! Integers prime to p act as units, so two generating sets span the same
//! Z_(p)-module exactly when their canonical bases coincide.

use num_traits::{One, Zero};

use super::matrix::MatQ;
use super::rational::{p_power, reduce_mod_p_power, split_p_part, vp_rational, Rational};
use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Lattice {
    p: u64,
    /// `basis[j]` is the j-th basis vector.
    basis: Vec<Vec<Rational>>,
    /// `pivots[j] = k` where `basis[j][j] = p^k`.
    pivots: Vec<i64>,
}

/// Canonical basis of the Z_(p)-module spanned by `vectors` in Q^dim.
pub fn lattice_canonical(vectors: &[Vec<Rational>], dim: usize, p: u64) -> Result<Lattice> {
    if vectors.iter().any(|v| v.len() != dim) {
        return Err(Error::DimensionMismatch(format!("lattice vectors must have length {dim}")));
    }
    let mut work: Vec<Vec<Rational>> =
        vectors.iter().filter(|v| v.iter().any(|x| !x.is_zero())).cloned().collect();
    let mut basis: Vec<Option<Vec<Rational>>> = vec![None; dim];
    let mut pivots = vec![0i64; dim];

    for row in (0..dim).rev() {
        let best = work
            .iter()
            .enumerate()
            .filter_map(|(idx, v)| vp_rational(&v[row], p).map(|k| (k, idx)))
            .min();
        let Some((k, idx)) = best else {
            let rank = MatQ::from_rows(vectors).rank();
            return Err(Error::RankDeficient { rank, expected: dim });
        };
        let mut piv = work.swap_remove(idx);
        let (unit, _) = split_p_part(&piv[row], p).expect("nonzero pivot");
        let unit_inv = unit.recip();
        for x in piv.iter_mut() {
            *x *= &unit_inv;
        }
        let pk = p_power(p, k);
        for w in work.iter_mut() {
            if w[row].is_zero() {
                continue;
            }
            let q = &w[row] / &pk;
            for (x, y) in w.iter_mut().zip(piv.iter()) {
                *x -= &q * y;
            }
        }
        work.retain(|v| v.iter().any(|x| !x.is_zero()));
        pivots[row] = k;
        basis[row] = Some(piv);
    }
    let mut basis: Vec<Vec<Rational>> = basis.into_iter().map(|b| b.unwrap()).collect();

    // reduce entries above each pivot
    for j in 0..dim {
        for i in (0..j).rev() {
            let entry = basis[j][i].clone();
            let reduced = reduce_mod_p_power(&entry, p, pivots[i]);
            if reduced == entry {
                continue;
            }
            let q = (&entry - &reduced) / p_power(p, pivots[i]);
            let (head, tail) = basis.split_at_mut(j);
            for (x, y) in tail[0].iter_mut().zip(head[i].iter()) {
                *x -= &q * y;
            }
        }
    }
    Ok(Lattice { p, basis, pivots })
}

impl Lattice {
    /// The standard lattice Z_(p)^dim.
    pub fn standard(dim: usize, p: u64) -> Self {
        let basis = (0..dim)
            .map(|j| (0..dim).map(|i| if i == j { Rational::one() } else { Rational::zero() }).collect())
            .collect();
        Lattice { p, basis, pivots: vec![0; dim] }
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[Vec<Rational>] {
        &self.basis
    }

    pub fn pivot_exponents(&self) -> &[i64] {
        &self.pivots
    }

    /// `v_p` of the determinant of the basis matrix.
    pub fn det_exponent(&self) -> i64 {
        self.pivots.iter().sum()
    }

    /// Coordinates of `x` in this basis (always exists since the lattice has full rank).
    pub fn coords(&self, x: &[Rational]) -> Vec<Rational> {
        let n = self.dim();
        assert_eq!(x.len(), n);
        let mut c = vec![Rational::zero(); n];
        for i in (0..n).rev() {
            let mut acc = x[i].clone();
            for (bj, cj) in self.basis.iter().zip(&c).skip(i + 1) {
                if !cj.is_zero() {
                    acc -= &bj[i] * cj;
                }
            }
            c[i] = acc / &self.basis[i][i];
        }
        c
    }

    /// Membership: all coordinates lie in Z_(p).
    pub fn contains(&self, x: &[Rational]) -> bool {
        self.coords(x)
            .iter()
            .all(|c| vp_rational(c, self.p).is_none_or(|k| k >= 0))
    }

    pub fn contains_lattice(&self, other: &Lattice) -> bool {
        other.basis.iter().all(|b| self.contains(b))
    }

    /// Linear combination of basis vectors.
    pub fn combine(&self, coeffs: &[Rational]) -> Vec<Rational> {
        let n = self.dim();
        let mut out = vec![Rational::zero(); n];
        for (c, b) in coeffs.iter().zip(self.basis.iter()) {
            if c.is_zero() {
                continue;
            }
            for (o, x) in out.iter_mut().zip(b.iter()) {
                *o += c * x;
            }
        }
        out
    }

    pub fn scaled(&self, c: &Rational) -> Lattice {
        let vs: Vec<Vec<Rational>> =
            self.basis.iter().map(|b| b.iter().map(|x| x * c).collect()).collect();
        lattice_canonical(&vs, self.dim(), self.p).expect("scaling keeps full rank")
    }

    /// Basis as matrix with the basis vectors as columns.
    pub fn matrix(&self) -> MatQ {
        MatQ::from_cols(&self.basis)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::rational::{frac, int};

    fn v(xs: &[i64]) -> Vec<Rational> {
        xs.iter().map(|&x| int(x)).collect()
    }

    #[test]
    fn standard_basis_is_canonical() {
        for p in [2, 3, 7] {
            let l = lattice_canonical(&[v(&[1, 0]), v(&[0, 1])], 2, p).unwrap();
            assert_eq!(l, Lattice::standard(2, p));
        }
    }

    #[test]
    fn unit_multiples_collapse() {
        let l = lattice_canonical(&[v(&[3, 0]), v(&[0, 1])], 2, 2).unwrap();
        assert_eq!(l.basis(), &[v(&[1, 0]), v(&[0, 1])]);
    }

    #[test]
    fn mixed_generators() {
        let l = lattice_canonical(&[v(&[2, 0]), v(&[1, 1])], 2, 2).unwrap();
        let other = lattice_canonical(&[v(&[1, 1]), v(&[0, 2])], 2, 2).unwrap();
        assert_eq!(l, other);
        assert_eq!(l.basis(), &[v(&[2, 0]), v(&[1, 1])]);
        assert_eq!(l.det_exponent(), 1);
    }

    #[test]
    fn fractional_entries() {
        let l = lattice_canonical(
            &[v(&[1, 0, 0]), v(&[0, 1, 0]), vec![int(0), frac(1, 2), frac(1, 2)]],
            3,
            2,
        )
        .unwrap();
        assert_eq!(l.pivot_exponents(), &[0, 0, -1]);
        assert!(l.contains(&[int(0), frac(1, 2), frac(1, 2)]));
        assert!(l.contains(&[int(0), int(0), int(1)]));
        assert!(!l.contains(&[int(0), int(0), frac(1, 2)]));
        assert!(l.contains(&[int(0), frac(1, 3), int(0)]));
    }

    #[test]
    fn rank_deficiency_reported() {
        let e = lattice_canonical(&[v(&[1, 1]), v(&[2, 2])], 2, 3).unwrap_err();
        assert_eq!(e, Error::RankDeficient { rank: 1, expected: 2 });
    }

    #[test]
    fn idempotent() {
        let l = lattice_canonical(&[v(&[4, 6, 1]), v(&[0, 2, 5]), v(&[1, 1, 8])], 3, 2).unwrap();
        let again = lattice_canonical(l.basis(), 3, 2).unwrap();
        assert_eq!(l, again);
    }
}
