//! Arithmetic in L = Q[x]/(f) in power-basis coordinates.

use std::ops::{Add, Neg, Sub};

use num_traits::{One, Zero};

use crate::arith::{MatQ, PolyQ, Rational};
use crate::error::{Error, Result};

/// `Q[x]/(f)` for a monic integral `f`. Irreducibility is not checked up
/// front; zero divisors surface as [`Error::NotIrreducible`].
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct NumberField {
    f: PolyQ,
    n: usize,
}

/// Element of a number field: coordinates in `1, θ, ..., θ^{n-1}`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct NFElem {
    coords: Vec<Rational>,
}

impl NFElem {
    pub fn from_coords(coords: Vec<Rational>) -> Self {
        NFElem { coords }
    }

    pub fn coords(&self) -> &[Rational] {
        &self.coords
    }

    pub fn into_coords(self) -> Vec<Rational> {
        self.coords
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(|c| c.is_zero())
    }

    pub fn scale(&self, c: &Rational) -> NFElem {
        NFElem { coords: self.coords.iter().map(|x| x * c).collect() }
    }

    /// The rational this element equals, if it lies in Q.
    pub fn as_rational(&self) -> Option<Rational> {
        if self.coords[1..].iter().all(|c| c.is_zero()) {
            Some(self.coords[0].clone())
        } else {
            None
        }
    }

    pub fn to_poly(&self) -> PolyQ {
        PolyQ::new(self.coords.clone())
    }

    /// Formats as a polynomial in the generator `a`.
    pub fn to_string_in(&self, var: &str) -> String {
        self.to_poly().to_string_in(var)
    }
}

impl std::fmt::Display for NFElem {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&self.to_string_in("a"))
    }
}

impl Add<&NFElem> for &NFElem {
    type Output = NFElem;
    fn add(self, rhs: &NFElem) -> NFElem {
        NFElem { coords: self.coords.iter().zip(&rhs.coords).map(|(a, b)| a + b).collect() }
    }
}

impl Sub<&NFElem> for &NFElem {
    type Output = NFElem;
    fn sub(self, rhs: &NFElem) -> NFElem {
        NFElem { coords: self.coords.iter().zip(&rhs.coords).map(|(a, b)| a - b).collect() }
    }
}

impl Neg for &NFElem {
    type Output = NFElem;
    fn neg(self) -> NFElem {
        NFElem { coords: self.coords.iter().map(|a| -a).collect() }
    }
}

impl NumberField {
    pub fn new(f: PolyQ) -> Result<Self> {
        let n = match f.degree() {
            Some(d) if d >= 1 => d,
            _ => return Err(Error::Parse("defining polynomial must have degree >= 1".into())),
        };
        if !f.is_monic() {
            return Err(Error::Parse(format!("defining polynomial {f} is not monic")));
        }
        if !f.has_integer_coeffs() {
            return Err(Error::Parse(format!("defining polynomial {f} has non-integer coefficients")));
        }
        Ok(NumberField { f, n })
    }

    pub fn poly(&self) -> &PolyQ {
        &self.f
    }

    pub fn degree(&self) -> usize {
        self.n
    }

    pub fn zero(&self) -> NFElem {
        NFElem { coords: vec![Rational::zero(); self.n] }
    }

    pub fn one(&self) -> NFElem {
        self.from_rational(Rational::one())
    }

    pub fn from_rational(&self, q: Rational) -> NFElem {
        let mut e = self.zero();
        e.coords[0] = q;
        e
    }

    /// `θ^k` for `k < n`; reduces otherwise.
    pub fn gen_power(&self, k: usize) -> NFElem {
        self.from_poly(&PolyQ::monomial(Rational::one(), k))
    }

    pub fn gen(&self) -> NFElem {
        self.gen_power(1)
    }

    pub fn element(&self, coords: Vec<Rational>) -> Result<NFElem> {
        if coords.len() != self.n {
            return Err(Error::DimensionMismatch(format!(
                "element has {} coordinates, field has degree {}",
                coords.len(),
                self.n
            )));
        }
        Ok(NFElem { coords })
    }

    pub fn from_poly(&self, g: &PolyQ) -> NFElem {
        let r = g.div_rem(&self.f).1;
        let mut coords: Vec<Rational> = r.coeffs().to_vec();
        coords.resize(self.n, Rational::zero());
        NFElem { coords }
    }

    pub fn mul(&self, a: &NFElem, b: &NFElem) -> NFElem {
        self.from_poly(&(&a.to_poly() * &b.to_poly()))
    }

    /// Inverse via extended Euclid against `f`.
    pub fn inv(&self, a: &NFElem) -> Result<NFElem> {
        if a.is_zero() {
            return Err(Error::ZeroInversion);
        }
        let (g, s, _) = PolyQ::ext_gcd(&a.to_poly(), &self.f);
        if g.degree() != Some(0) {
            return Err(Error::NotIrreducible(format!("{} is a proper factor of {}", g, self.f)));
        }
        Ok(self.from_poly(&s))
    }

    pub fn div(&self, a: &NFElem, b: &NFElem) -> Result<NFElem> {
        Ok(self.mul(a, &self.inv(b)?))
    }

    pub fn pow(&self, a: &NFElem, e: i64) -> Result<NFElem> {
        let base = if e < 0 { self.inv(a)? } else { a.clone() };
        let mut k = e.unsigned_abs();
        let mut acc = self.one();
        let mut sq = base;
        while k > 0 {
            if k & 1 == 1 {
                acc = self.mul(&acc, &sq);
            }
            k >>= 1;
            if k > 0 {
                sq = self.mul(&sq, &sq);
            }
        }
        Ok(acc)
    }

    /// Matrix of `y -> a*y` on the power basis (columns are `a θ^j`).
    pub fn mul_matrix(&self, a: &NFElem) -> MatQ {
        let cols: Vec<Vec<Rational>> = (0..self.n)
            .map(|j| self.mul(a, &self.gen_power(j)).into_coords())
            .collect();
        MatQ::from_cols(&cols)
    }

    pub fn norm_trace(&self, a: &NFElem) -> (Rational, Rational) {
        let m = self.mul_matrix(a);
        (m.determinant(), m.trace())
    }

    pub fn norm(&self, a: &NFElem) -> Rational {
        self.mul_matrix(a).determinant()
    }

    pub fn trace(&self, a: &NFElem) -> Rational {
        self.mul_matrix(a).trace()
    }

    /// Characteristic polynomial of the multiplication matrix (Faddeev-LeVerrier).
    pub fn char_poly(&self, a: &NFElem) -> PolyQ {
        let n = self.n;
        let m = self.mul_matrix(a);
        let mut coeffs = vec![Rational::zero(); n + 1];
        coeffs[n] = Rational::one();
        let mut mk = MatQ::zeros(n, n);
        for k in 1..=n {
            // M_k = A M_{k-1} + c_{n-k+1} I
            let mut next = m.mul(&mk);
            for i in 0..n {
                let v = next.get(i, i) + &coeffs[n - k + 1];
                next.set(i, i, v);
            }
            let am = m.mul(&next);
            coeffs[n - k] = -am.trace() / Rational::from_integer((k as i64).into());
            mk = next;
        }
        PolyQ::new(coeffs)
    }

    /// Monic polynomial of least degree vanishing at `a`.
    pub fn min_poly(&self, a: &NFElem) -> PolyQ {
        let mut powers = vec![self.one()];
        loop {
            let next = self.mul(powers.last().unwrap(), a);
            let basis = MatQ::from_cols(
                &powers.iter().map(|p| p.coords.clone()).collect::<Vec<_>>(),
            );
            if let Some(sol) = basis.solve(&next.coords) {
                let mut coeffs: Vec<Rational> = sol.into_iter().map(|c| -c).collect();
                coeffs.push(Rational::one());
                return PolyQ::new(coeffs);
            }
            powers.push(next);
        }
    }

    /// Evaluates a rational polynomial at an element.
    pub fn eval(&self, g: &PolyQ, a: &NFElem) -> NFElem {
        g.coeffs().iter().rev().fold(self.zero(), |acc, c| {
            let mut r = self.mul(&acc, a);
            r.coords[0] += c;
            r
        })
    }

    /// Discriminant of `f`, as the determinant of the trace form.
    pub fn discriminant(&self) -> Rational {
        let n = self.n;
        let traces: Vec<Rational> = (0..2 * n - 1)
            .map(|k| self.trace(&self.gen_power(k)))
            .collect();
        let rows: Vec<Vec<Rational>> =
            (0..n).map(|i| (0..n).map(|j| traces[i + j].clone()).collect()).collect();
        MatQ::from_rows(&rows).determinant()
    }
}
