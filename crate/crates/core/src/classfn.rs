//! Exact class functions on `SL₂(F_q)`: inner products, induction, the
//! permutation character on `P¹(F_q)`, Steinberg and Gelfand–Graev characters.

use std::collections::BTreeMap;
use std::ops::{Add, Neg, Sub};

use serde::Serialize;
use thiserror::Error;

use crate::context::Sl2Context;
use crate::cyclotomic::CycNum;
use crate::fields::{Fq2, Mat2};
use crate::group::{unipotent_element, SubgroupData};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ClassFnError {
    #[error("class functions have {left} and {right} values")]
    ClassMismatch { left: usize, right: usize },
    #[error("values are not constant on conjugacy classes of the subgroup")]
    NotClassFunctionOnSubgroup,
    #[error("no value supplied for subgroup element {0}")]
    MissingValue(usize),
    #[error("Gelfand-Graev index must be 1 or 2, got {0}")]
    BadIndex(u32),
}

/// One exact value per conjugacy class, in class order.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ClassFn {
    values: Vec<CycNum>,
    #[serde(rename = "virtual")]
    is_virtual: bool,
}

impl ClassFn {
    pub fn new(values: Vec<CycNum>) -> Self {
        ClassFn { values, is_virtual: false }
    }

    pub fn new_virtual(values: Vec<CycNum>) -> Self {
        ClassFn { values, is_virtual: true }
    }

    pub fn values(&self) -> &[CycNum] {
        &self.values
    }

    pub fn value(&self, class: usize) -> &CycNum {
        &self.values[class]
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    /// Set when the function came out of a difference, so it need not be an
    /// honest character.
    pub fn is_virtual(&self) -> bool {
        self.is_virtual
    }

    pub fn conj(&self) -> ClassFn {
        ClassFn { values: self.values.iter().map(CycNum::conj).collect(), is_virtual: self.is_virtual }
    }

    pub fn scale_int(&self, n: i64) -> ClassFn {
        ClassFn {
            values: self.values.iter().map(|v| v.scale_int(n)).collect(),
            is_virtual: self.is_virtual || n < 0,
        }
    }

    /// Values on the p-regular classes, in class order.
    pub fn restrict_p_regular(&self, ctx: &Sl2Context) -> Vec<CycNum> {
        ctx.classes.p_regular().iter().map(|&c| self.values[c].clone()).collect()
    }

    /// Integer values, when every value is a rational integer.
    pub fn as_integers(&self) -> Option<Vec<i64>> {
        self.values.iter().map(CycNum::as_i64).collect()
    }

    fn zip_with(&self, other: &ClassFn, op: impl Fn(&CycNum, &CycNum) -> CycNum) -> ClassFn {
        assert_eq!(self.len(), other.len(), "class functions on different class lists");
        ClassFn {
            values: self.values.iter().zip(&other.values).map(|(a, b)| op(a, b)).collect(),
            is_virtual: self.is_virtual || other.is_virtual,
        }
    }
}

impl Add for &ClassFn {
    type Output = ClassFn;
    fn add(self, rhs: &ClassFn) -> ClassFn {
        self.zip_with(rhs, |a, b| a + b)
    }
}

impl Sub for &ClassFn {
    type Output = ClassFn;
    fn sub(self, rhs: &ClassFn) -> ClassFn {
        let mut out = self.zip_with(rhs, |a, b| a - b);
        out.is_virtual = true;
        out
    }
}

impl Neg for &ClassFn {
    type Output = ClassFn;
    fn neg(self) -> ClassFn {
        ClassFn { values: self.values.iter().map(|v| -v).collect(), is_virtual: true }
    }
}

pub fn trivial(ctx: &Sl2Context) -> ClassFn {
    ClassFn::new(vec![ctx.cyclo.one(); ctx.classes.len()])
}

/// `(1/|G|) Σ_c |c|·f(c)·conj(h(c))`.
pub fn inner_product(ctx: &Sl2Context, f: &ClassFn, h: &ClassFn) -> Result<CycNum, ClassFnError> {
    let n = ctx.classes.len();
    if f.len() != n || h.len() != n {
        return Err(ClassFnError::ClassMismatch { left: f.len(), right: h.len() });
    }
    let mut acc = ctx.cyclo.zero();
    for (c, data) in ctx.classes.iter().enumerate() {
        acc += &(&f.values[c] * &h.values[c].conj()).scale_int(data.size as i64);
    }
    Ok(acc.div_int(ctx.group_order() as i64))
}

/// Induces a class function of `sub` (given on every member) to the whole
/// group: `Ind(φ)(x) = (1/|S|) Σ_{g : gxg⁻¹ ∈ S} φ(gxg⁻¹)`.
pub fn induce(
    ctx: &Sl2Context,
    values: &BTreeMap<usize, CycNum>,
    sub: &SubgroupData,
) -> Result<ClassFn, ClassFnError> {
    let group = &ctx.group;
    for &m in &sub.members {
        if !values.contains_key(&m) {
            return Err(ClassFnError::MissingValue(m));
        }
    }
    for &s in &sub.members {
        for &h in &sub.members {
            if values[&group.conjugate(h, s)] != values[&s] {
                return Err(ClassFnError::NotClassFunctionOnSubgroup);
            }
        }
    }
    let order = sub.order() as i64;
    let out = ctx
        .classes
        .iter()
        .map(|class| {
            let x = class.representative;
            let mut acc = ctx.cyclo.zero();
            for g in 0..group.len() {
                let y = group.conjugate(g, x);
                if sub.contains(y) {
                    acc += &values[&y];
                }
            }
            acc.div_int(order)
        })
        .collect();
    Ok(ClassFn::new(out))
}

/// `Ind_S^G 1`.
pub fn induced_trivial(ctx: &Sl2Context, sub: &SubgroupData) -> ClassFn {
    let values = sub.members.iter().map(|&m| (m, ctx.cyclo.one())).collect();
    induce(ctx, &values, sub).expect("the trivial character is a class function")
}

fn fixed_lines(ctx: &Sl2Context, g: &Mat2) -> usize {
    let f = &*ctx.tower;
    let lines = std::iter::once((Fq2::ZERO, Fq2::ONE))
        .chain(ctx.tower.base_field().iter().map(|&y| (Fq2::ONE, y)));
    lines
        .filter(|&v| {
            let w = g.apply(v, f);
            f.sub(f.mul(v.0, w.1), f.mul(v.1, w.0)).is_zero()
        })
        .count()
}

/// Number of fixed points on `P¹(F_q)` of a group element.
pub fn fixed_points_p1(ctx: &Sl2Context, element: usize) -> usize {
    fixed_lines(ctx, ctx.group.element(element))
}

pub fn permutation_character_p1(ctx: &Sl2Context) -> ClassFn {
    let values = ctx
        .classes
        .iter()
        .map(|c| ctx.cyclo.from_integer(fixed_points_p1(ctx, c.representative) as i64))
        .collect();
    ClassFn::new(values)
}

pub fn steinberg(ctx: &Sl2Context) -> ClassFn {
    let mut st = &permutation_character_p1(ctx) - &trivial(ctx);
    st.is_virtual = false;
    st
}

/// A nontrivial character of `U^F ≅ (F_q, +)`: `x ↦ ζ_p^{Tr(scale·x)}`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AdditiveCharacter {
    pub label: u32,
    pub scale: Fq2,
}

impl AdditiveCharacter {
    /// Exponent of `ζ_p` at `x`.
    pub fn exponent(&self, ctx: &Sl2Context, x: Fq2) -> u32 {
        ctx.tower.trace_to_prime(ctx.tower.mul(self.scale, x))
    }

    pub fn value(&self, ctx: &Sl2Context, x: Fq2) -> CycNum {
        ctx.cyclo
            .root_of_unity(ctx.p(), self.exponent(ctx, x) as i64)
            .expect("p divides the conductor")
    }

    /// The `S^F`-translate `x ↦ ψ(a²x)`.
    pub fn twisted(&self, ctx: &Sl2Context, a: Fq2) -> AdditiveCharacter {
        let f = &ctx.tower;
        AdditiveCharacter { label: self.label, scale: f.mul(self.scale, f.mul(a, a)) }
    }

    /// Values on `U^F`, keyed by group element.
    pub fn on_unipotent(&self, ctx: &Sl2Context) -> BTreeMap<usize, CycNum> {
        ctx.tower
            .base_field()
            .iter()
            .map(|&x| (unipotent_element(&ctx.group, x), self.value(ctx, x)))
            .collect()
    }
}

/// `(ψ₁, ψ₂)`: `ψ₂(x) = ψ₁(εx)` with `ε` the generator of `F_q^×` when `q` is
/// odd; `ψ₂ = ψ₁` when `q` is even.
pub fn additive_characters(ctx: &Sl2Context) -> (AdditiveCharacter, AdditiveCharacter) {
    let psi1 = AdditiveCharacter { label: 1, scale: Fq2::ONE };
    let scale = if ctx.p() == 2 { Fq2::ONE } else { ctx.tower.base_generator() };
    (psi1, AdditiveCharacter { label: 2, scale })
}

pub fn gelfand_graev_from(ctx: &Sl2Context, psi: &AdditiveCharacter) -> ClassFn {
    induce(ctx, &psi.on_unipotent(ctx), &ctx.u).expect("U is abelian")
}

/// `Γᵢ = Ind_{U^F}^{G^F} ψᵢ`.
pub fn gelfand_graev(ctx: &Sl2Context, i: u32) -> Result<ClassFn, ClassFnError> {
    let (psi1, psi2) = additive_characters(ctx);
    match i {
        1 => Ok(gelfand_graev_from(ctx, &psi1)),
        2 => Ok(gelfand_graev_from(ctx, &psi2)),
        _ => Err(ClassFnError::BadIndex(i)),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::ElementKind;

    fn int(ctx: &Sl2Context, n: i64) -> CycNum {
        ctx.cyclo.from_integer(n)
    }

    #[test]
    fn inner_product_examples() {
        for q in [2, 3, 4, 5] {
            let ctx = Sl2Context::new(q).unwrap();
            let one = trivial(&ctx);
            assert!(inner_product(&ctx, &one, &one).unwrap().is_one());
            let perm = permutation_character_p1(&ctx);
            assert_eq!(inner_product(&ctx, &perm, &perm).unwrap(), int(&ctx, 2));
            let st = steinberg(&ctx);
            assert!(inner_product(&ctx, &st, &st).unwrap().is_one());
        }
    }

    #[test]
    fn steinberg_norm_q3_by_hand_sum() {
        // brute force: Σ_g St(g)² over all 24 elements, divided by 24
        let ctx = Sl2Context::new(3).unwrap();
        let st = steinberg(&ctx).as_integers().unwrap();
        let total: i64 =
            (0..ctx.group_order()).map(|g| st[ctx.classes.class_of(g)].pow(2)).sum();
        assert_eq!(total, 24);
        assert_eq!(ctx.classes.len(), 7);
    }

    #[test]
    fn mismatch_is_an_error() {
        let ctx = Sl2Context::new(2).unwrap();
        let short = ClassFn::new(vec![ctx.cyclo.one()]);
        assert!(matches!(
            inner_product(&ctx, &short, &trivial(&ctx)),
            Err(ClassFnError::ClassMismatch { .. })
        ));
    }

    #[test]
    fn induction_indices() {
        let ctx = Sl2Context::new(5).unwrap();
        let id = ctx.identity_class();
        assert_eq!(induced_trivial(&ctx, &ctx.b).value(id), &int(&ctx, 6));
        assert_eq!(induced_trivial(&ctx, &ctx.u).value(id), &int(&ctx, 24));
        let ib = induced_trivial(&ctx, &ctx.b);
        assert_eq!(ib, permutation_character_p1(&ctx));
    }

    #[test]
    fn induction_rejects_non_class_function() {
        let ctx = Sl2Context::new(5).unwrap();
        // a function on B that is not constant on B-classes
        let values: BTreeMap<usize, CycNum> = ctx
            .b
            .members
            .iter()
            .map(|&m| (m, if ctx.u.contains(m) && m != ctx.group.identity() { int(&ctx, m as i64) } else { int(&ctx, 0) }))
            .collect();
        assert_eq!(induce(&ctx, &values, &ctx.b).unwrap_err(), ClassFnError::NotClassFunctionOnSubgroup);
        let partial = BTreeMap::new();
        assert!(matches!(induce(&ctx, &partial, &ctx.b), Err(ClassFnError::MissingValue(_))));
    }

    #[test]
    fn permutation_and_steinberg_values() {
        let ctx = Sl2Context::new(5).unwrap();
        let perm = permutation_character_p1(&ctx);
        let st = steinberg(&ctx);
        for (c, data) in ctx.classes.iter().enumerate() {
            let (pv, sv) = match data.kind {
                ElementKind::Identity => (6, 5),
                ElementKind::Unipotent => (1, 0),
                ElementKind::Split => (2, 1),
                _ => continue,
            };
            assert_eq!(perm.value(c), &int(&ctx, pv));
            assert_eq!(st.value(c), &int(&ctx, sv));
        }
        let ctx = Sl2Context::new(2).unwrap();
        let perm = permutation_character_p1(&ctx);
        let three_cycle = ctx.classes.iter().position(|c| c.order == 3).unwrap();
        assert!(perm.value(three_cycle).is_zero());
    }

    #[test]
    fn additive_character_examples() {
        let ctx = Sl2Context::new(3).unwrap();
        let (psi1, psi2) = additive_characters(&ctx);
        assert!(psi1.value(&ctx, Fq2::ZERO).is_one());
        let z3 = |e| ctx.cyclo.root_of_unity(3, e).unwrap();
        assert_eq!(psi1.value(&ctx, Fq2::ONE), z3(1));
        assert_eq!(psi2.value(&ctx, Fq2::ONE), z3(2));
        assert_eq!(psi2.value(&ctx, Fq2::ONE), psi1.value(&ctx, ctx.tower.from_prime_field(2)));
    }

    #[test]
    fn additive_characters_are_homomorphisms() {
        let ctx = Sl2Context::new(9).unwrap();
        let (psi1, psi2) = additive_characters(&ctx);
        for psi in [psi1, psi2] {
            for &x in ctx.tower.base_field() {
                for &y in ctx.tower.base_field() {
                    let lhs = psi.value(&ctx, ctx.tower.add(x, y));
                    assert_eq!(lhs, &psi.value(&ctx, x) * &psi.value(&ctx, y));
                }
            }
            assert!(ctx.tower.base_field().iter().any(|&x| !psi.value(&ctx, x).is_one()));
        }
    }

    #[test]
    fn psi_orbits_are_distinct_for_q5() {
        let ctx = Sl2Context::new(5).unwrap();
        let (psi1, psi2) = additive_characters(&ctx);
        let table = |psi: &AdditiveCharacter| -> Vec<u32> {
            ctx.tower.base_field().iter().map(|&x| psi.exponent(&ctx, x)).collect()
        };
        let target = table(&psi2);
        for &a in &ctx.tower.base_field()[1..] {
            assert_ne!(table(&psi1.twisted(&ctx, a)), target);
        }
    }

    #[test]
    fn gelfand_graev_basics() {
        for q in [2, 3, 4, 5] {
            let ctx = Sl2Context::new(q).unwrap();
            let g1 = gelfand_graev(&ctx, 1).unwrap();
            let g2 = gelfand_graev(&ctx, 2).unwrap();
            let id = ctx.identity_class();
            assert_eq!(g1.value(id).as_i64(), Some((q * q - 1) as i64));
            if q % 2 == 0 {
                assert_eq!(g1, g2);
            }
            let sum = &g1 + &g2;
            for (c, data) in ctx.classes.iter().enumerate() {
                match data.kind {
                    ElementKind::Unipotent => assert_eq!(sum.value(c).as_i64(), Some(-2)),
                    ElementKind::Identity => {}
                    _ => {
                        assert!(g1.value(c).is_zero());
                        assert!(sum.value(c).is_zero());
                    }
                }
            }
            assert!(inner_product(&ctx, &g1, &trivial(&ctx)).unwrap().is_zero());
        }
        let ctx = Sl2Context::new(2).unwrap();
        assert_eq!(gelfand_graev(&ctx, 3).unwrap_err(), ClassFnError::BadIndex(3));
    }
}
