//! Acceptance suite: one PASS/FAIL line per criterion over the corpus.

mod common;

use std::process::ExitCode;
use std::time::Instant;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use common::{factor_pattern, local_factors_by_enumeration, random_elem, random_int, CORPUS};
use valext::arith::rational::{frac, int, p_power, vp_rational};
use valext::arith::{Rational, Val};
use valext::extensions::{compute_extensions, ExtensionSet, Position};
use valext::field::{NFElem, NumberField};
use valext::theorems::{approx_element, check_fundamental, weak_approx};
use valext::trace::Trace;

type Check = Result<String, String>;

fn corpus() -> Vec<(&'static str, NumberField, u64, ExtensionSet)> {
    CORPUS
        .iter()
        .map(|inst| {
            let k = inst.field();
            let set = compute_extensions(&k, inst.p, &mut Trace::disabled()).unwrap();
            (inst.name, k, inst.p, set)
        })
        .collect()
}

fn ef(set: &ExtensionSet) -> Vec<(u64, usize)> {
    let mut v: Vec<_> = set.extensions.iter().map(|w| (w.e(), w.f())).collect();
    v.sort();
    v
}

/// The 2-maximal order of `x^3+x^2-2x+8` is spanned by `1, θ, (θ+θ²)/2`.
fn dedekind_oracle() -> Vec<(u64, usize)> {
    let k = CORPUS[4].field();
    let omega = NFElem::from_coords(vec![int(0), frac(1, 2), frac(1, 2)]);
    let to_basis = |x: &NFElem| -> Vec<u64> {
        let c = x.coords();
        let c2 = &c[2] * int(2);
        let c1 = &c[1] - &c2 / int(2);
        [c[0].clone(), c1, c2]
            .iter()
            .map(|q| {
                assert!(q.is_integer());
                q.to_integer().to_string().parse::<i64>().unwrap().rem_euclid(2) as u64
            })
            .collect()
    };
    let from_basis = |v: &[u64]| -> NFElem {
        let mut x = k.from_rational(int(v[0] as i64));
        x = &x + &k.gen().scale(&int(v[1] as i64));
        &x + &omega.scale(&int(v[2] as i64))
    };
    let elems: Vec<Vec<u64>> = (0..8u64).map(|m| vec![m & 1, (m >> 1) & 1, (m >> 2) & 1]).collect();
    local_factors_by_enumeration(2, &elems, |a, b| to_basis(&k.mul(&from_basis(a), &from_basis(b))))
}

fn c1_splitting(data: &[(&str, NumberField, u64, ExtensionSet)]) -> Check {
    for (i, (name, _, p, set)) in data.iter().enumerate() {
        let oracle = if i == 4 { dedekind_oracle() } else { factor_pattern(CORPUS[i].coeffs, *p) };
        let got = ef(set);
        if got != oracle {
            return Err(format!("{name}: got {got:?}, oracle {oracle:?}"));
        }
    }
    let expected: [&[(u64, usize)]; 5] =
        [&[(1, 1), (1, 1)], &[(2, 1)], &[(1, 2)], &[(1, 1), (2, 1)], &[(1, 1), (1, 1), (1, 1)]];
    for ((name, _, _, set), exp) in data.iter().zip(expected) {
        if ef(set) != exp {
            return Err(format!("{name}: got {:?}, expected {exp:?}", ef(set)));
        }
    }
    Ok("5 instances match the oracles".into())
}

fn c2_sum_ef(data: &[(&str, NumberField, u64, ExtensionSet)]) -> Check {
    for (name, k, _, set) in data {
        if set.sum_ef() != k.degree() as u64 {
            return Err(format!("{name}: sum {} vs degree {}", set.sum_ef(), k.degree()));
        }
    }
    Ok("sum e*f = n everywhere".into())
}

fn c3_reduced_dim(data: &[(&str, NumberField, u64, ExtensionSet)]) -> Check {
    for (name, k, _, set) in data {
        let sum_f: usize = set.extensions.iter().map(|w| w.f()).sum();
        if set.reduced_dim() > k.degree() || set.reduced_dim() != sum_f {
            return Err(format!("{name}: dim {} vs sum f {sum_f}", set.reduced_dim()));
        }
    }
    Ok("dim R/J = sum f <= n".into())
}

fn c4_decomposition(data: &[(&str, NumberField, u64, ExtensionSet)]) -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    let mut checked = 0usize;
    for (name, _, p, set) in data {
        let a = &set.reduced.algebra;
        let ids = &set.decomposition.idempotents;
        let mut total = a.zero();
        for (i, e) in ids.iter().enumerate() {
            total = a.add(&total, e);
            if a.mul(e, e) != *e {
                return Err(format!("{name}: idempotent {i} not idempotent"));
            }
            for (j, g) in ids.iter().enumerate() {
                if i != j && a.mul(e, g) != a.zero() {
                    return Err(format!("{name}: idempotents {i}, {j} not orthogonal"));
                }
            }
        }
        if total != a.unit() {
            return Err(format!("{name}: idempotents do not sum to 1"));
        }
        for comp in &set.decomposition.components {
            let c = &comp.algebra;
            let d = c.dim();
            let samples: Vec<Vec<u64>> = if d <= 2 && *p <= 7 {
                (1..p.pow(d as u32)).map(|m| (0..d).map(|i| m / p.pow(i as u32) % p).collect()).collect()
            } else {
                (0..500)
                    .map(|_| (0..d).map(|_| rng.gen_range(0..*p)).collect::<Vec<u64>>())
                    .filter(|x| x.iter().any(|&v| v != 0))
                    .collect()
            };
            for x in samples {
                checked += 1;
                let invertible = if d <= 2 && *p <= 7 {
                    (0..p.pow(d as u32))
                        .map(|m| (0..d).map(|i| m / p.pow(i as u32) % p).collect::<Vec<u64>>())
                        .any(|y| c.mul(&x, &y) == c.unit())
                } else {
                    c.mult_matrix(&x).is_invertible()
                };
                if !invertible {
                    return Err(format!("{name}: {x:?} not invertible in a component"));
                }
            }
        }
    }
    Ok(format!("{checked} component elements invertible"))
}

fn random_order_elem(rng: &mut ChaCha8Rng, set: &ExtensionSet, i: usize) -> NFElem {
    let n = set.order.degree();
    loop {
        let x = if rng.gen_bool(0.5) {
            set.order.element(&(0..n).map(|_| random_int(rng, 12)).collect::<Vec<_>>())
        } else {
            let prime = set.extensions[i].prime();
            let mut coords = vec![Rational::from_integer(0.into()); n];
            for row in prime.basis() {
                let c = random_int(rng, 12);
                for (a, b) in coords.iter_mut().zip(row) {
                    *a += &c * b;
                }
            }
            NFElem::from_coords(coords)
        };
        if !x.is_zero() {
            return x;
        }
    }
}

fn c5_bijection(data: &[(&str, NumberField, u64, ExtensionSet)]) -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let mut hits = 0;
    for (name, _, _, set) in data {
        for (i, w) in set.extensions.iter().enumerate() {
            for _ in 0..50 {
                let x = random_order_elem(&mut rng, set, i);
                let decided = matches!(w.decide_position(&x).map_err(|e| e.to_string())?, Position::InMaximalIdeal(_));
                let member = w.prime().contains(x.coords());
                if decided != member {
                    return Err(format!("{name}, w_{}: {x} decided {decided}, lattice {member}", w.index()));
                }
                hits += member as usize;
            }
        }
    }
    Ok(format!("0 mismatches, {hits} elements in the prime"))
}

fn c6_axioms(data: &[(&str, NumberField, u64, ExtensionSet)]) -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(6);
    let mut pairs = 0;
    for (name, k, p, set) in data {
        for w in &set.extensions {
            let v = |x: &NFElem| w.value(x).map_err(|e| format!("{name}: {e}"));
            if v(&k.from_rational(int(*p as i64)))? != Val::Finite(int(1)) {
                return Err(format!("{name}: w(p) != 1"));
            }
            for _ in 0..200 {
                let x = random_elem(&mut rng, k, *p);
                let y = random_elem(&mut rng, k, *p);
                let (vx, vy) = (v(&x)?, v(&y)?);
                if v(&k.mul(&x, &y))? != vx.clone() + vy.clone() {
                    return Err(format!("{name}: w(xy) != w(x)+w(y) for {x}, {y}"));
                }
                if v(&(&x + &y))? < vx.clone().min(vy.clone()) {
                    return Err(format!("{name}: ultrametric fails for {x}, {y}"));
                }
                for val in [&vx, &vy] {
                    if let Val::Finite(q) = val {
                        if w.e() % q.denom().to_string().parse::<u64>().unwrap() != 0 {
                            return Err(format!("{name}: value {q} with e = {}", w.e()));
                        }
                    }
                }
                let q = frac(rng.gen_range(1..=50), rng.gen_range(1..=50)) * p_power(*p, rng.gen_range(-3..=3));
                if v(&k.from_rational(q.clone()))? != Val::Finite(int(vp_rational(&q, *p).unwrap())) {
                    return Err(format!("{name}: w({q}) != v_p"));
                }
                pairs += 1;
            }
        }
    }
    Ok(format!("{pairs} random pairs"))
}

fn c7_weak(data: &[(&str, NumberField, u64, ExtensionSet)]) -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for (name, _, p, set) in data {
        for _ in 0..50 {
            let targets: Vec<Vec<u64>> =
                set.extensions.iter().map(|w| (0..w.f()).map(|_| rng.gen_range(0..*p)).collect()).collect();
            let x = weak_approx(&set.extensions, &targets).map_err(|e| e.to_string())?;
            if !set.order.contains(&x) {
                return Err(format!("{name}: {x} not in the order"));
            }
            for (w, t) in set.extensions.iter().zip(&targets) {
                if w.residue(&x).map_err(|e| e.to_string())? != *t {
                    return Err(format!("{name}: residue of {x} at w_{} misses {t:?}", w.index()));
                }
            }
        }
    }
    Ok("250 target tuples hit".into())
}

fn c8_approx(data: &[(&str, NumberField, u64, ExtensionSet)]) -> Check {
    let mut count = 0;
    for (name, _, _, set) in data {
        let ws = &set.extensions;
        for t in 0..ws.len() {
            let e = ws[t].e() as i64;
            for g in [frac(-2, e), frac(-1, e), int(0), frac(1, e), int(1)] {
                let x = approx_element(ws, t, &g).map_err(|e| e.to_string())?;
                for (i, w) in ws.iter().enumerate() {
                    let v = w.value(&x).map_err(|e| e.to_string())?;
                    let ok = if i == t { v == Val::Finite(g.clone()) } else { v > Val::Finite(g.clone()) };
                    if !ok {
                        return Err(format!("{name}: target w_{}, gamma {g}: w_{}(x) = {v}", t + 1, i + 1));
                    }
                }
                count += 1;
            }
        }
    }
    Ok(format!("{count} (target, gamma) cases"))
}

fn c9_fundamental(data: &[(&str, NumberField, u64, ExtensionSet)]) -> Check {
    for (name, _, _, set) in data {
        let r = check_fundamental(&set.extensions, 100, 9).map_err(|e| e.to_string())?;
        if !r.pass || r.trials.len() != 100 {
            return Err(format!("{name}: {} failing trials, rank {} vs {}", r.failures(), r.rank, r.sum_ef));
        }
    }
    Ok("100 trials per instance, rank = sum e*f".into())
}

fn c10_e_cross_check(data: &[(&str, NumberField, u64, ExtensionSet)]) -> Check {
    for (name, _, _, set) in data {
        for w in &set.extensions {
            let e = w.e_from_values().map_err(|e| e.to_string())?;
            if e != w.e() {
                return Err(format!("{name}, w_{}: lattice e {e}, dimension e {}", w.index(), w.e()));
            }
        }
    }
    Ok("lattice e = dimension e".into())
}

fn main() -> ExitCode {
    let start = Instant::now();
    let data = corpus();
    type Criterion = fn(&[(&str, NumberField, u64, ExtensionSet)]) -> Check;
    let criteria: [(&str, Criterion); 10] = [
        ("splitting corpus", c1_splitting),
        ("sum e*f equals degree", c2_sum_ef),
        ("reduced quotient dimension", c3_reduced_dim),
        ("decomposition invariants", c4_decomposition),
        ("prime membership round trip", c5_bijection),
        ("valuation axioms", c6_axioms),
        ("weak approximation", c7_weak),
        ("approximation lemma", c8_approx),
        ("fundamental inequality engine", c9_fundamental),
        ("ramification cross-check", c10_e_cross_check),
    ];
    let mut failed = 0;
    for (i, (name, check)) in criteria.iter().enumerate() {
        let t = Instant::now();
        match check(&data) {
            Ok(detail) => println!("criterion {:>2} {name}: PASS ({detail}; {:.2?})", i + 1, t.elapsed()),
            Err(detail) => {
                failed += 1;
                println!("criterion {:>2} {name}: FAIL ({detail})", i + 1);
            }
        }
    }
    println!("acceptance: {}/10 passed in {:.2?}", 10 - failed, start.elapsed());
    if failed == 0 { ExitCode::SUCCESS } else { ExitCode::FAILURE }
}
