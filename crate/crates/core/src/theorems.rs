//! Weak approximation, the approximation lemma and the fundamental
//! inequality, as constructions over a complete set of extensions.

use num_traits::Zero;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::arith::rational::{p_power, serde_rational_vec, vp_rational};
use crate::arith::{MatFp, MatQ, Rational, Val};
use crate::error::{Error, Result};
use crate::extensions::ExtensionValuation;
use crate::field::NFElem;

/// An element of the order whose residue at `exts[i]` is `targets[i]`.
pub fn weak_approx(exts: &[ExtensionValuation], targets: &[Vec<u64>]) -> Result<NFElem> {
    let first = exts.first().ok_or_else(|| Error::DimensionMismatch("no extensions".into()))?;
    if targets.len() != exts.len() {
        return Err(Error::DimensionMismatch(format!(
            "{} targets for {} extensions",
            targets.len(),
            exts.len()
        )));
    }
    let order = first.order();
    let fp = first.residue_field().field();
    let mut stacked = MatFp::zeros(fp, 0, order.degree());
    let mut rhs = Vec::new();
    for (w, t) in exts.iter().zip(targets) {
        if t.len() != w.f() {
            return Err(Error::DimensionMismatch(format!(
                "target of length {} for residue degree {}",
                t.len(),
                w.f()
            )));
        }
        stacked = stacked.vstack(w.projection());
        rhs.extend(t.iter().map(|&c| c % fp.p()));
    }
    let v = stacked
        .solve(&rhs)
        .ok_or_else(|| Error::Internal("residue maps are not jointly surjective".into()))?;
    Ok(order.lift(&v))
}

/// An element `x` with `w_t(x) = γ` and `w_i(x) > γ` for every `i ≠ t`,
/// where `t` indexes `exts` from zero.
pub fn approx_element(exts: &[ExtensionValuation], target: usize, gamma: &Rational) -> Result<NFElem> {
    let w1 = exts
        .get(target)
        .ok_or_else(|| Error::DimensionMismatch(format!("no extension at position {target}")))?;
    let e1 = w1.e();
    let den = gamma.denom();
    if !(Rational::from_integer(e1.into()) / Rational::from_integer(den.clone())).is_integer() {
        return Err(Error::GammaNotInValueGroup(format!("{gamma} with e = {e1}")));
    }
    // Put the target first, keeping the others in order.
    let mut ordered: Vec<&ExtensionValuation> = vec![w1];
    ordered.extend(exts.iter().enumerate().filter(|(i, _)| *i != target).map(|(_, w)| w));

    let k = w1.field();
    let p = w1.p();
    let uniformizer = uniformizer(w1)?;
    let power = (gamma * Rational::from_integer(e1.into())).to_integer();
    let power: i64 = num_traits::ToPrimitive::to_i64(&power)
        .ok_or_else(|| Error::Internal("exponent overflow".into()))?;
    let x = k.pow(&uniformizer, power)?;

    let wx: Vec<Val> = ordered.iter().map(|w| w.value(&x)).collect::<Result<_>>()?;
    let g = Val::Finite(gamma.clone());
    let unit_or_zero = |w: &ExtensionValuation, one: bool| {
        if one { w.residue_field().unit().to_vec() } else { w.residue_field().zero() }
    };
    let a_targets: Vec<Vec<u64>> = ordered
        .iter()
        .enumerate()
        .map(|(i, w)| unit_or_zero(w, i == 0 || wx[i] < g))
        .collect();
    let b_targets: Vec<Vec<u64>> =
        ordered.iter().enumerate().map(|(i, w)| unit_or_zero(w, i != 0)).collect();
    let owned: Vec<ExtensionValuation> = ordered.iter().map(|w| (*w).clone()).collect();
    let a = weak_approx(&owned, &a_targets)?;
    let b = weak_approx(&owned, &b_targets)?;

    let e = den.clone();
    let e: i64 = num_traits::ToPrimitive::to_i64(&e).unwrap_or(1);
    let c_exp = (gamma * Rational::from_integer((2 * e).into())).to_integer();
    let c_exp: i64 = num_traits::ToPrimitive::to_i64(&c_exp)
        .ok_or_else(|| Error::Internal("exponent overflow".into()))?;
    let c = p_power(p, c_exp);

    let ax_pow = k.pow(&k.mul(&a, &x), 1 - 2 * e)?;
    let y = &x + &k.mul(&b, &ax_pow).scale(&c);
    Ok(k.pow(&y, 1 - 2 * e)?.scale(&c))
}

/// A basis element of the prime with value `1/e`.
fn uniformizer(w: &ExtensionValuation) -> Result<NFElem> {
    let target = Val::Finite(Rational::new(1.into(), w.e().into()));
    for g in w.prime().basis() {
        let x = NFElem::from_coords(g.clone());
        if w.value(&x)? == target {
            return Ok(x);
        }
    }
    Err(Error::Internal("no prime basis element of minimal value".into()))
}

/// Both sides of the single-valuation min formula.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FormulaCheck {
    pub lhs: Val,
    pub rhs: Val,
    pub equal: bool,
}

/// Compares `w(Σ c_ij a_i b_j)` with `min v_p(c_ij) + w(b_j)`; `c` has one
/// row per `a_i`.
pub fn check_value_formula_single(
    w: &ExtensionValuation,
    a: &[NFElem],
    b: &[NFElem],
    c: &[Vec<Rational>],
) -> Result<FormulaCheck> {
    let k = w.field();
    let p = w.p();
    if c.len() != a.len() || c.iter().any(|row| row.len() != b.len()) {
        return Err(Error::DimensionMismatch(format!(
            "coefficient matrix does not match {} × {}",
            a.len(),
            b.len()
        )));
    }
    let mut residues = Vec::with_capacity(a.len());
    for ai in a {
        if w.value(ai)? != Val::Finite(Rational::zero()) {
            return Err(Error::HypothesisViolation(format!("{ai} is not a unit")));
        }
        residues.push(w.residue(ai)?);
    }
    let fp = w.residue_field().field();
    if !residues.is_empty() && MatFp::from_rows(fp, w.f(), &residues).rank() != a.len() {
        return Err(Error::HypothesisViolation("residues are linearly dependent".into()));
    }
    let bv: Vec<Val> = b.iter().map(|x| w.value(x)).collect::<Result<_>>()?;
    let mut classes = Vec::new();
    for v in &bv {
        let q = v
            .as_finite()
            .ok_or_else(|| Error::HypothesisViolation("zero element among b".into()))?;
        let class = q - q.floor();
        if classes.contains(&class) {
            return Err(Error::HypothesisViolation(format!("value {q} repeats a class mod Z")));
        }
        classes.push(class);
    }

    let mut sum = k.zero();
    let mut rhs = Val::Infinity;
    for (i, ai) in a.iter().enumerate() {
        for (j, bj) in b.iter().enumerate() {
            let cij = &c[i][j];
            if cij.is_zero() {
                continue;
            }
            sum = &sum + &k.mul(ai, bj).scale(cij);
            let term = Val::Finite(Rational::from_integer(vp_rational(cij, p).unwrap().into())) + bv[j].clone();
            rhs = rhs.min(term);
        }
    }
    let lhs = w.value(&sum)?;
    Ok(FormulaCheck { equal: lhs == rhs, lhs, rhs })
}

/// Residue lifts `a[i][j]` and value representatives `b[i][k]`, one family
/// per extension.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EfBasis {
    pub a: Vec<Vec<NFElem>>,
    pub b: Vec<Vec<NFElem>>,
}

impl EfBasis {
    /// The products `a[i][j] b[i][k]` in `(i, j, k)` order.
    pub fn products(&self, exts: &[ExtensionValuation]) -> Vec<NFElem> {
        let k = exts[0].field();
        let mut out = Vec::new();
        for (ai, bi) in self.a.iter().zip(&self.b) {
            for x in ai {
                for y in bi {
                    out.push(k.mul(x, y));
                }
            }
        }
        out
    }
}

pub fn build_ef_basis(exts: &[ExtensionValuation]) -> Result<EfBasis> {
    let mut a = Vec::with_capacity(exts.len());
    let mut b = Vec::with_capacity(exts.len());
    for (i, w) in exts.iter().enumerate() {
        let mut ai = Vec::with_capacity(w.f());
        for j in 0..w.f() {
            let targets: Vec<Vec<u64>> = exts
                .iter()
                .enumerate()
                .map(|(l, u)| if l == i { w.residue_field().basis_vec(j) } else { u.residue_field().zero() })
                .collect();
            ai.push(weak_approx(exts, &targets)?);
        }
        let mut bi = vec![w.field().one()];
        for k in 1..w.e() {
            bi.push(approx_element(exts, i, &Rational::new(k.into(), w.e().into()))?);
        }
        a.push(ai);
        b.push(bi);
    }
    Ok(EfBasis { a, b })
}

/// One random linear combination of the basis products.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TrialRecord {
    pub seed: u64,
    #[serde(with = "serde_rational_vec")]
    pub coefficients: Vec<Rational>,
    pub lhs: Val,
    pub rhs: Val,
    pub equal: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CheckReport {
    pub instance: String,
    pub prime: u64,
    pub degree: usize,
    pub sum_ef: u64,
    pub rank: usize,
    pub trials: Vec<TrialRecord>,
    pub pass: bool,
}

impl CheckReport {
    pub fn failures(&self) -> usize {
        self.trials.iter().filter(|t| !t.equal).count()
    }
}

/// Random coefficient: numerator in `[-p^3, p^3]`, denominator either prime
/// to `p` or a power of `p`.
fn random_coefficient(rng: &mut ChaCha8Rng, p: u64) -> Rational {
    let bound = (p as i64).saturating_pow(3);
    let num = rng.gen_range(-bound..=bound);
    let den = if rng.gen_ratio(1, 4) {
        p_power(p, rng.gen_range(1..=2)).to_integer()
    } else {
        loop {
            let d = rng.gen_range(1..=bound.max(2));
            if d % p as i64 != 0 {
                break d.into();
            }
        }
    };
    Rational::new(num.into(), den)
}

/// Checks the min formula over all extensions on `trials` random
/// combinations, and the rank of the product family.
pub fn check_fundamental(exts: &[ExtensionValuation], trials: usize, seed: u64) -> Result<CheckReport> {
    let first = exts.first().ok_or_else(|| Error::DimensionMismatch("no extensions".into()))?;
    let k = first.field();
    let p = first.p();
    let n = k.degree();
    let basis = build_ef_basis(exts)?;
    let products = basis.products(exts);
    let sum_ef: u64 = exts.iter().map(|w| w.e() * w.f() as u64).sum();
    let rank = if products.is_empty() {
        0
    } else {
        MatQ::from_rows(&products.iter().map(|x| x.coords().to_vec()).collect::<Vec<_>>()).rank()
    };

    // w_i(b_{i,k}) alongside each product slot.
    let mut slot_values = Vec::with_capacity(products.len());
    for ((w, ai), bi) in exts.iter().zip(&basis.a).zip(&basis.b) {
        let bv: Vec<Val> = bi.iter().map(|x| w.value(x)).collect::<Result<_>>()?;
        for _ in ai {
            slot_values.extend(bv.iter().cloned());
        }
    }

    let mut records = Vec::with_capacity(trials);
    for t in 0..trials {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        rng.set_stream(t as u64);
        let coefficients: Vec<Rational> = products.iter().map(|_| random_coefficient(&mut rng, p)).collect();
        let mut sum = k.zero();
        let mut rhs = Val::Infinity;
        for ((c, x), bv) in coefficients.iter().zip(&products).zip(&slot_values) {
            if let Some(v) = vp_rational(c, p) {
                sum = &sum + &x.scale(c);
                rhs = rhs.min(Val::Finite(Rational::from_integer(v.into())) + bv.clone());
            }
        }
        let lhs = Val::min_of(exts.iter().map(|w| w.value(&sum)).collect::<Result<Vec<_>>>()?);
        records.push(TrialRecord { seed: t as u64, coefficients, equal: lhs == rhs, lhs, rhs });
    }
    let pass = records.iter().all(|r| r.equal) && rank as u64 == sum_ef && sum_ef <= n as u64;
    Ok(CheckReport {
        instance: format!("f = {}, p = {p}", k.poly()),
        prime: p,
        degree: n,
        sum_ef,
        rank,
        trials: records,
        pass,
    })
}
