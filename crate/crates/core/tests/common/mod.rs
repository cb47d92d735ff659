//! Shared corpus and brute-force oracles for the integration tests.
#![allow(dead_code)]

use num_traits::Zero;
use rand::Rng;
use rand_chacha::ChaCha8Rng;

use valext::arith::rational::{frac, int, p_power};
use valext::arith::{PolyQ, Rational};
use valext::field::{NFElem, NumberField};

pub struct Instance {
    pub name: &'static str,
    /// Coefficients of `f`, constant term first.
    pub coeffs: &'static [i64],
    pub p: u64,
}

impl Instance {
    pub fn field(&self) -> NumberField {
        NumberField::new(PolyQ::from_i64(self.coeffs)).unwrap()
    }
}

pub const CORPUS: &[Instance] = &[
    Instance { name: "x^2+1 at 5", coeffs: &[1, 0, 1], p: 5 },
    Instance { name: "x^2+1 at 2", coeffs: &[1, 0, 1], p: 2 },
    Instance { name: "x^2+1 at 7", coeffs: &[1, 0, 1], p: 7 },
    Instance { name: "x^3-x-1 at 23", coeffs: &[-1, -1, 0, 1], p: 23 },
    Instance { name: "x^3+x^2-2x+8 at 2", coeffs: &[8, -2, 1, 1], p: 2 },
];

fn trim(mut v: Vec<u64>) -> Vec<u64> {
    while v.last() == Some(&0) {
        v.pop();
    }
    v
}

/// Exact division of `a` by monic `b` over F_p, if it divides.
fn divide_exact(a: &[u64], b: &[u64], p: u64) -> Option<Vec<u64>> {
    let mut r = a.to_vec();
    let db = b.len() - 1;
    if r.len() < b.len() {
        return None;
    }
    let mut q = vec![0u64; r.len() - db];
    for i in (0..q.len()).rev() {
        let c = r[i + db];
        q[i] = c;
        for (j, &bj) in b.iter().enumerate() {
            r[i + j] = (r[i + j] + p * p - c * bj % p) % p;
        }
    }
    if r.iter().all(|&c| c == 0) { Some(q) } else { None }
}

fn monic_polys(deg: usize, p: u64) -> impl Iterator<Item = Vec<u64>> {
    let count = p.pow(deg as u32);
    (0..count).map(move |mut k| {
        let mut v = Vec::with_capacity(deg + 1);
        for _ in 0..deg {
            v.push(k % p);
            k /= p;
        }
        v.push(1);
        v
    })
}

/// Factorization pattern of `f mod p` by trial division, as sorted
/// `(multiplicity, degree)` pairs.
pub fn factor_pattern(coeffs: &[i64], p: u64) -> Vec<(u64, usize)> {
    let mut f = trim(coeffs.iter().map(|&c| c.rem_euclid(p as i64) as u64).collect());
    let mut out = Vec::new();
    let mut deg = 1;
    while f.len() > 1 {
        if 2 * deg > f.len() - 1 {
            out.push((1, f.len() - 1));
            break;
        }
        let mut found = false;
        for g in monic_polys(deg, p) {
            let mut mult = 0;
            while let Some(q) = divide_exact(&f, &g, p) {
                f = q;
                mult += 1;
            }
            if mult > 0 {
                out.push((mult, deg));
                found = true;
            }
        }
        if !found {
            deg += 1;
        }
    }
    out.sort();
    out
}

/// `(e, f)` pairs of the local factors of a finite commutative F_p-algebra
/// given by its full multiplication on element indices, found by listing
/// all idempotents.
pub fn local_factors_by_enumeration(p: u64, elems: &[Vec<u64>], mul: impl Fn(&[u64], &[u64]) -> Vec<u64>) -> Vec<(u64, usize)> {
    let zero = vec![0; elems[0].len()];
    let idem: Vec<&Vec<u64>> = elems.iter().filter(|e| **e != zero && mul(e, e) == **e).collect();
    let primitive: Vec<&Vec<u64>> = idem
        .iter()
        .filter(|e| idem.iter().all(|g| g == *e || mul(g, e) != **g))
        .copied()
        .collect();
    let mut out = Vec::new();
    for e in primitive {
        let mut ideal: Vec<Vec<u64>> = elems.iter().map(|a| mul(a, e)).collect();
        ideal.sort();
        ideal.dedup();
        let nilpotent = ideal
            .iter()
            .filter(|x| {
                let mut y = (*x).clone();
                for _ in 0..elems[0].len() + 1 {
                    y = mul(&y, x);
                }
                y == zero
            })
            .count();
        let size_exp = log_p(ideal.len(), p);
        let res_exp = log_p(ideal.len() / nilpotent, p);
        out.push(((size_exp / res_exp) as u64, res_exp));
    }
    out.sort();
    out
}

fn log_p(mut n: usize, p: u64) -> usize {
    let mut k = 0;
    while n > 1 {
        assert_eq!(n % p as usize, 0);
        n /= p as usize;
        k += 1;
    }
    k
}

/// A random nonzero field element with small coefficients, some of them
/// carrying powers of `p`.
pub fn random_elem(rng: &mut ChaCha8Rng, k: &NumberField, p: u64) -> NFElem {
    loop {
        let coords: Vec<Rational> = (0..k.degree())
            .map(|_| {
                let num = rng.gen_range(-9i64..=9);
                let den = [1i64, 1, 2, 3, 7][rng.gen_range(0..5)];
                frac(num, den) * p_power(p, rng.gen_range(-1..=2))
            })
            .collect();
        let x = NFElem::from_coords(coords);
        if !x.is_zero() {
            return x;
        }
    }
}

pub fn random_int(rng: &mut ChaCha8Rng, bound: i64) -> Rational {
    int(rng.gen_range(-bound..=bound))
}

pub fn is_zero_vec(v: &[Rational]) -> bool {
    v.iter().all(|c| c.is_zero())
}
