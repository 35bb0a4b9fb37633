//! Comparisons against independent computations: schoolbook polynomial
//! arithmetic for the field tables, element-wise sums for induction, the
//! classical character table of SL₂(F_q) for the Deligne–Lusztig values, and
//! multiplicity counts from the known decomposition of Gelfand–Graev.

use drinfeld_core::brauer::BrauerBasis;
use drinfeld_core::classfn::{
    additive_characters, gelfand_graev, inner_product, steinberg, trivial, ClassFn,
};
use drinfeld_core::cyclotomic::CycNum;
use drinfeld_core::deligne_lusztig::dl_characters;
use drinfeld_core::fields::{FieldTower, Fq2};
use drinfeld_core::group::ElementKind;
use drinfeld_core::Sl2Context;

fn decode(mut x: u32, p: u32, n: usize) -> Vec<u32> {
    (0..n)
        .map(|_| {
            let c = x % p;
            x /= p;
            c
        })
        .collect()
}

fn encode(coeffs: &[u32], p: u32) -> u32 {
    coeffs.iter().rev().fold(0, |acc, &c| acc * p + c)
}

/// Product of two residues modulo the monic `x^n + Σ c_i x^i`.
fn poly_mulmod(a: &[u32], b: &[u32], modulus: &[u32], p: u32) -> Vec<u32> {
    let n = modulus.len();
    let mut prod = vec![0u32; 2 * n];
    for (i, &x) in a.iter().enumerate() {
        for (j, &y) in b.iter().enumerate() {
            prod[i + j] = (prod[i + j] + x * y) % p;
        }
    }
    for top in (n..2 * n).rev() {
        let lead = prod[top];
        if lead == 0 {
            continue;
        }
        prod[top] = 0;
        for (i, &c) in modulus.iter().enumerate() {
            prod[top - n + i] = (prod[top - n + i] + p * p - lead * c % p) % p;
        }
    }
    prod.truncate(n);
    prod
}

fn is_primitive(modulus: &[u32], p: u32) -> bool {
    let n = modulus.len();
    let order = p.pow(n as u32) - 1;
    let mut x = vec![0; n];
    x[1 % n] = 1;
    if n == 1 {
        x[0] = (p - modulus[0]) % p;
    }
    let one = {
        let mut v = vec![0; n];
        v[0] = 1;
        v
    };
    let mut acc = x.clone();
    for k in 1..=order {
        if acc == one {
            return k == order;
        }
        acc = poly_mulmod(&acc, &x, modulus, p);
    }
    false
}

#[test]
fn field_tables_agree_with_polynomial_arithmetic() {
    for q in [2, 3, 4, 5, 7, 8, 9, 11, 13, 16] {
        let f = FieldTower::new(q).unwrap();
        let p = f.p();
        let n = f.modulus().len();
        let size = f.size();
        let stride = (size / 60).max(1);
        for a in (0..size).step_by(stride as usize) {
            for b in (0..size).step_by(stride as usize) {
                let expected =
                    encode(&poly_mulmod(&decode(a, p, n), &decode(b, p, n), f.modulus(), p), p);
                assert_eq!(f.mul(Fq2(a), Fq2(b)), Fq2(expected), "q={q} a={a} b={b}");
                let sum: Vec<u32> =
                    decode(a, p, n).iter().zip(decode(b, p, n)).map(|(x, y)| (x + y) % p).collect();
                assert_eq!(f.add(Fq2(a), Fq2(b)), Fq2(encode(&sum, p)));
            }
        }
    }
}

#[test]
fn modulus_is_first_primitive_in_lexicographic_order() {
    for q in [2, 3, 4, 5, 7, 8, 9] {
        let f = FieldTower::new(q).unwrap();
        let p = f.p();
        let n = f.modulus().len();
        // tuples (c_0, .., c_{n-1}) in lexicographic order, c_0 most significant
        let first = (0..p.pow(n as u32))
            .map(|t| {
                let mut digits = decode(t, p, n);
                digits.reverse();
                digits
            })
            .find(|c| is_primitive(c, p))
            .unwrap();
        assert_eq!(f.modulus(), first.as_slice(), "q={q}");
    }
}

fn elementwise_inner(ctx: &Sl2Context, f: &dyn Fn(usize) -> CycNum, h: &ClassFn, members: &[usize]) -> CycNum {
    let mut acc = ctx.cyclo.zero();
    for &g in members {
        acc += &(&f(g) * &h.value(ctx.classes.class_of(g)).conj());
    }
    acc.div_int(members.len() as i64)
}

#[test]
fn frobenius_reciprocity_for_gelfand_graev() {
    for q in [3, 4, 5] {
        let ctx = Sl2Context::new(q).unwrap();
        let (psi1, _) = additive_characters(&ctx);
        let on_u = psi1.on_unipotent(&ctx);
        let gamma = gelfand_graev(&ctx, 1).unwrap();
        let mut targets = vec![steinberg(&ctx), trivial(&ctx)];
        targets.extend(dl_characters(&ctx).into_iter().map(|r| r.values));
        for chi in &targets {
            let lhs = inner_product(&ctx, &gamma, chi).unwrap();
            let rhs = elementwise_inner(&ctx, &|u| on_u[&u].clone(), chi, &ctx.u.members);
            assert_eq!(lhs, rhs, "q={q}");
        }
    }
}

#[test]
fn inner_product_matches_sum_over_elements() {
    let ctx = Sl2Context::new(5).unwrap();
    let st = steinberg(&ctx);
    let all: Vec<usize> = (0..ctx.group_order()).collect();
    for r in dl_characters(&ctx) {
        let by_class = inner_product(&ctx, &r.values, &st).unwrap();
        let by_element = elementwise_inner(&ctx, &|g| r.values.value(ctx.classes.class_of(g)).clone(), &st, &all);
        assert_eq!(by_class, by_element);
    }
}

/// `R_T^θ` for the non-split torus from the classical table:
/// `(1-q)θ(z)` at central `z`, `θ(z)` at `z·u`, `0` on split classes and
/// `θ(λ) + θ(λ⁻¹)` at an elliptic element with eigenvalue `λ ∈ μ_{q+1}`
/// (minus the cuspidal character of degree `q - 1`).
fn classical_value(ctx: &Sl2Context, j: u32, class: usize) -> CycNum {
    let q = ctx.q() as i64;
    let f = &*ctx.tower;
    let theta = |t: Fq2| {
        let k = f.mu_index(t).expect("norm one") as i64;
        ctx.cyclo.root_of_unity(ctx.q() + 1, j as i64 * k).unwrap()
    };
    let minus_one = f.neg(Fq2::ONE);
    match ctx.classes.get(class).kind {
        ElementKind::Identity => ctx.cyclo.from_integer(1 - q),
        ElementKind::MinusIdentity => theta(minus_one).scale_int(1 - q),
        ElementKind::Unipotent => ctx.cyclo.one(),
        ElementKind::MinusUnipotent => theta(minus_one),
        ElementKind::Split => ctx.cyclo.zero(),
        ElementKind::NonSplit => {
            let lambda = ctx.eigenvalue(class).unwrap();
            &theta(lambda) + &theta(f.inv(lambda).unwrap())
        }
    }
}

#[test]
fn deligne_lusztig_matches_classical_table() {
    for q in [2, 3, 4, 5, 7, 8, 9] {
        let ctx = Sl2Context::new(q).unwrap();
        for r in dl_characters(&ctx) {
            for c in 0..ctx.classes.len() {
                assert_eq!(r.values.value(c), &classical_value(&ctx, r.j, c), "q={q} j={} class={c}", r.j);
            }
        }
    }
}

#[test]
fn gelfand_graev_multiplicities() {
    for q in [2, 3, 4, 5, 7, 8, 9] {
        let ctx = Sl2Context::new(q).unwrap();
        let g1 = gelfand_graev(&ctx, 1).unwrap();
        let g2 = gelfand_graev(&ctx, 2).unwrap();
        let norm = inner_product(&ctx, &g1, &g1).unwrap().as_i64();
        let cross = inner_product(&ctx, &g1, &g2).unwrap().as_i64();
        let q = q as i64;
        if q % 2 == 0 {
            assert_eq!((norm, cross), (Some(q), Some(q)));
        } else {
            assert_eq!((norm, cross), (Some(q + 1), Some(q - 1)));
        }
    }
}

#[test]
fn steinberg_reduces_to_top_symmetric_power() {
    for q in [2, 3, 4, 5, 7, 8, 9] {
        let ctx = Sl2Context::new(q).unwrap();
        let basis = BrauerBasis::new(&ctx).unwrap();
        let mut top = vec![0; q as usize];
        top[q as usize - 1] = 1;
        assert_eq!(basis.decomposition_map(&ctx, &steinberg(&ctx)).unwrap().0, top);
        let mut bottom = vec![0; q as usize];
        bottom[0] = 1;
        assert_eq!(basis.decomposition_map(&ctx, &trivial(&ctx)).unwrap().0, bottom);
    }
}
