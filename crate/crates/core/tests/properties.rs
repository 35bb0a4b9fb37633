use std::collections::BTreeSet;
use std::sync::{Arc, OnceLock};

use proptest::prelude::*;

use drinfeld_core::brauer::{BrauerBasis, G0Vector};
use drinfeld_core::classfn::{gelfand_graev, induced_trivial, steinberg, trivial, ClassFn};
use drinfeld_core::cyclotomic::{CycNum, CycloField};
use drinfeld_core::deligne_lusztig::dl_characters;
use drinfeld_core::fields::{FieldTower, Fq2};
use drinfeld_core::verify::{emit, run_all, CheckName, Format, Report, VerifyOptions};
use drinfeld_core::Sl2Context;

fn tower(q: u32) -> &'static FieldTower {
    static TOWERS: OnceLock<Vec<(u32, FieldTower)>> = OnceLock::new();
    let all = TOWERS.get_or_init(|| {
        [4, 5, 8, 9, 11].into_iter().map(|q| (q, FieldTower::new(q).unwrap())).collect()
    });
    &all.iter().find(|(k, _)| *k == q).unwrap().1
}

fn field_and_elements() -> impl Strategy<Value = (u32, Fq2, Fq2, Fq2)> {
    prop::sample::select(vec![4u32, 5, 8, 9, 11]).prop_flat_map(|q| {
        let size = q * q;
        (Just(q), 0..size, 0..size, 0..size).prop_map(|(q, a, b, c)| (q, Fq2(a), Fq2(b), Fq2(c)))
    })
}

proptest! {
    #[test]
    fn field_axioms((q, a, b, c) in field_and_elements()) {
        let f = tower(q);
        prop_assert_eq!(f.mul(a, f.mul(b, c)), f.mul(f.mul(a, b), c));
        prop_assert_eq!(f.mul(a, f.add(b, c)), f.add(f.mul(a, b), f.mul(a, c)));
        prop_assert_eq!(f.add(a, f.neg(a)), Fq2::ZERO);
        prop_assert_eq!(f.mul(a, b), f.mul(b, a));
        if !a.is_zero() {
            prop_assert_eq!(f.mul(a, f.inv(a).unwrap()), Fq2::ONE);
        }
    }

    #[test]
    fn frobenius_and_norm((q, a, b, _c) in field_and_elements()) {
        let f = tower(q);
        prop_assert_eq!(f.frobenius(f.add(a, b)), f.add(f.frobenius(a), f.frobenius(b)));
        prop_assert_eq!(f.frobenius(f.mul(a, b)), f.mul(f.frobenius(a), f.frobenius(b)));
        prop_assert_eq!(f.frobenius(f.frobenius(a)), a);
        prop_assert!(f.in_base_field(f.norm(a)));
        prop_assert_eq!(f.norm(f.mul(a, b)), f.mul(f.norm(a), f.norm(b)));
    }

    #[test]
    fn discrete_log_inverts_power((q, a, _b, _c) in field_and_elements()) {
        let f = tower(q);
        if !a.is_zero() {
            let k = f.discrete_log(a).unwrap();
            prop_assert_eq!(f.pow_gen(k as i64), a);
        } else {
            prop_assert!(f.discrete_log(a).is_err());
        }
    }
}

fn cyclo(n: u32) -> Arc<CycloField> {
    static FIELDS: OnceLock<Vec<Arc<CycloField>>> = OnceLock::new();
    let all = FIELDS.get_or_init(|| [24, 30, 40, 48].into_iter().map(CycloField::new).collect());
    all.iter().find(|k| k.conductor() == n).unwrap().clone()
}

fn cyc_pair() -> impl Strategy<Value = (CycNum, CycNum, i64)> {
    prop::sample::select(vec![24u32, 30, 40, 48]).prop_flat_map(|n| {
        let terms = prop::collection::vec((0..n as i64, -4i64..5), 0..5);
        let units: Vec<i64> = (1..n as i64).filter(|m| num_integer::gcd(*m, n as i64) == 1).collect();
        (terms.clone(), terms, prop::sample::select(units)).prop_map(move |(a, b, m)| {
            let k = cyclo(n);
            (k.from_exponents(a), k.from_exponents(b), m)
        })
    })
}

fn close(a: (f64, f64), b: (f64, f64)) -> bool {
    (a.0 - b.0).abs() < 1e-8 && (a.1 - b.1).abs() < 1e-8
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(96))]

    #[test]
    fn conjugation_is_a_ring_automorphism((a, b, m) in cyc_pair()) {
        prop_assert_eq!((&a * &b).conj(), &a.conj() * &b.conj());
        prop_assert_eq!((&a + &b).conj(), &a.conj() + &b.conj());
        prop_assert_eq!(a.conj().conj(), a.clone());
        prop_assert_eq!((&a * &b).galois(m), &a.galois(m) * &b.galois(m));
    }

    #[test]
    fn arithmetic_matches_complex_numbers((a, b, _m) in cyc_pair()) {
        let (ar, ai) = a.approx();
        let (br, bi) = b.approx();
        prop_assert!(close((&a * &b).approx(), (ar * br - ai * bi, ar * bi + ai * br)));
        prop_assert!(close((&a - &b).approx(), (ar - br, ai - bi)));
        prop_assert!(close(a.conj().approx(), (ar, -ai)));
    }

    #[test]
    fn inverse_is_two_sided((a, _b, _m) in cyc_pair()) {
        match a.inverse() {
            Some(inv) => {
                prop_assert!((&a * &inv).is_one());
                prop_assert!((&inv * &a).is_one());
            }
            None => prop_assert!(a.is_zero()),
        }
    }
}

struct Characters {
    ctx: Sl2Context,
    basis: BrauerBasis,
    chars: Vec<ClassFn>,
}

fn characters() -> &'static Characters {
    static C: OnceLock<Characters> = OnceLock::new();
    C.get_or_init(|| {
        let ctx = Sl2Context::new(5).unwrap();
        let basis = BrauerBasis::new(&ctx).unwrap();
        let mut chars = vec![
            trivial(&ctx),
            steinberg(&ctx),
            induced_trivial(&ctx, &ctx.u),
            gelfand_graev(&ctx, 1).unwrap(),
            gelfand_graev(&ctx, 2).unwrap(),
        ];
        chars.extend(dl_characters(&ctx).into_iter().map(|r| r.values));
        Characters { ctx, basis, chars }
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn decomposition_map_is_additive(coeffs in prop::collection::vec(-3i64..4, 10)) {
        let c = characters();
        let mut combo = ClassFn::new(vec![c.ctx.cyclo.zero(); c.ctx.classes.len()]);
        let mut expected = G0Vector::zero(5);
        for (chi, &n) in c.chars.iter().zip(&coeffs) {
            combo = &combo + &chi.scale_int(n);
            expected = &expected + &c.basis.decomposition_map(&c.ctx, chi).unwrap().scale(n);
        }
        prop_assert_eq!(c.basis.decomposition_map(&c.ctx, &combo).unwrap(), expected);
    }
}

fn reports() -> &'static Vec<Report> {
    static R: OnceLock<Vec<Report>> = OnceLock::new();
    R.get_or_init(|| {
        let opts = VerifyOptions { stable: true, ..Default::default() };
        [2, 3, 4].into_iter().map(|q| run_all(q, None, opts).unwrap()).collect()
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn report_json_round_trips(which in 0usize..3, mask in 1u32..(1 << 14)) {
        let full = &reports()[which];
        let selected: BTreeSet<&str> = CheckName::ALL
            .iter()
            .enumerate()
            .filter(|(i, _)| mask & (1 << i) != 0)
            .map(|(_, c)| c.as_str())
            .collect();
        let mut report = full.clone();
        report.checks.retain(|c| selected.contains(c.name.as_str()));
        let mut bytes = Vec::new();
        emit(&report, Format::Json, &mut bytes).unwrap();
        let parsed: Report = serde_json::from_slice(&bytes).unwrap();
        prop_assert_eq!(&parsed, &report);
        let mut again = Vec::new();
        emit(&parsed, Format::Json, &mut again).unwrap();
        prop_assert_eq!(bytes, again);
    }
}
