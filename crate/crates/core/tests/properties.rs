mod common;

use std::sync::OnceLock;

use proptest::prelude::*;

use common::CORPUS;
use valext::arith::lattice::lattice_canonical;
use valext::arith::rational::{format_rational, frac, parse_rational, vp_rational};
use valext::arith::{Rational, Val};
use valext::extensions::{extensions_of, ExtensionDescriptor, ExtensionValuation};
use valext::field::{NFElem, NumberField};

fn instances() -> &'static Vec<(NumberField, u64, Vec<ExtensionValuation>)> {
    static DATA: OnceLock<Vec<(NumberField, u64, Vec<ExtensionValuation>)>> = OnceLock::new();
    DATA.get_or_init(|| {
        CORPUS
            .iter()
            .map(|inst| {
                let k = inst.field();
                let ws = extensions_of(&k, inst.p).unwrap();
                (k, inst.p, ws)
            })
            .collect()
    })
}

fn rational() -> impl Strategy<Value = Rational> {
    (-60i64..=60, 1i64..=40).prop_map(|(n, d)| frac(n, d))
}

fn val() -> impl Strategy<Value = Val> {
    prop_oneof![Just(Val::Infinity), rational().prop_map(Val::Finite)]
}

fn coords(n: usize) -> impl Strategy<Value = Vec<Rational>> {
    prop::collection::vec(rational(), n)
}

fn nonzero(n: usize) -> impl Strategy<Value = NFElem> {
    coords(n).prop_filter("nonzero", |c| c.iter().any(|x| *x != frac(0, 1))).prop_map(NFElem::from_coords)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn lattice_canonical_is_idempotent(rows in prop::collection::vec(coords(3), 3..6), p in prop::sample::select(vec![2u64, 3, 5])) {
        if let Ok(l) = lattice_canonical(&rows, 3, p) {
            let again = lattice_canonical(l.basis(), 3, p).unwrap();
            prop_assert_eq!(&again, &l);
            for r in &rows {
                prop_assert!(l.contains(r));
            }
        }
    }

    #[test]
    fn vp_is_multiplicative_and_ultrametric(a in rational(), b in rational(), p in prop::sample::select(vec![2u64, 3, 5, 7])) {
        prop_assume!(a != frac(0, 1) && b != frac(0, 1));
        prop_assert_eq!(vp_rational(&(&a * &b), p).unwrap(), vp_rational(&a, p).unwrap() + vp_rational(&b, p).unwrap());
        if let Some(s) = vp_rational(&(&a + &b), p) {
            prop_assert!(s >= vp_rational(&a, p).unwrap().min(vp_rational(&b, p).unwrap()));
        }
    }

    #[test]
    fn norm_is_multiplicative_and_trace_additive(i in 0..CORPUS.len(), x in coords(3), y in coords(3)) {
        let (k, _, _) = &instances()[i];
        let n = k.degree();
        let x = NFElem::from_coords(x[..n].to_vec());
        let y = NFElem::from_coords(y[..n].to_vec());
        prop_assert_eq!(k.norm(&k.mul(&x, &y)), k.norm(&x) * k.norm(&y));
        prop_assert_eq!(k.trace(&(&x + &y)), k.trace(&x) + k.trace(&y));
    }

    #[test]
    fn residue_is_a_ring_map_on_the_order(i in 0..CORPUS.len(), a in prop::collection::vec(-30i64..=30, 3), b in prop::collection::vec(-30i64..=30, 3)) {
        let (_, _, ws) = &instances()[i];
        let order = ws[0].order();
        let n = order.degree();
        let to = |v: &[i64]| order.element(&v[..n].iter().map(|&c| frac(c, 1)).collect::<Vec<_>>());
        let (x, y) = (to(&a), to(&b));
        let k = order.field();
        for w in ws {
            let r = w.residue_field();
            let (rx, ry) = (w.residue(&x).unwrap(), w.residue(&y).unwrap());
            prop_assert_eq!(w.residue(&(&x + &y)).unwrap(), r.add(&rx, &ry));
            prop_assert_eq!(w.residue(&k.mul(&x, &y)).unwrap(), r.mul(&rx, &ry));
        }
    }

    #[test]
    fn value_of_inverse_is_negated(i in 0..CORPUS.len(), x in nonzero(3)) {
        let (k, _, ws) = &instances()[i];
        let x = NFElem::from_coords(x.coords()[..k.degree()].to_vec());
        prop_assume!(!x.is_zero());
        let inv = k.inv(&x).unwrap();
        for w in ws {
            prop_assert_eq!(w.value(&x).unwrap() + w.value(&inv).unwrap(), Val::Finite(frac(0, 1)));
        }
    }

    #[test]
    fn rational_text_round_trips(q in rational()) {
        prop_assert_eq!(parse_rational(&format_rational(&q)).unwrap(), q);
    }

    #[test]
    fn val_json_round_trips(v in val()) {
        let s = serde_json::to_string(&v).unwrap();
        prop_assert_eq!(serde_json::from_str::<Val>(&s).unwrap(), v);
    }

    #[test]
    fn val_min_is_associative(a in val(), b in val(), c in val()) {
        prop_assert_eq!(a.clone().min(b.clone()).min(c.clone()), a.min(b.min(c)));
    }
}

#[test]
fn descriptors_round_trip() {
    for (_, _, ws) in instances() {
        for w in ws {
            let d = w.descriptor();
            let s = serde_json::to_string(&d).unwrap();
            assert_eq!(serde_json::from_str::<ExtensionDescriptor>(&s).unwrap(), d);
        }
    }
}
