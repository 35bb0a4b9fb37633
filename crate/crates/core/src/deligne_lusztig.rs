//! Deligne–Lusztig characters `R^θ` of `SL₂(F_q)` from fixed points on the
//! affine Drinfeld curve `D: xy^q - x^q y = 1`, plus Lefschetz numbers on its
//! projective closure.
//!
//! On p-regular classes `R^θ(g)` is the `θ`-weighted average over
//! `t ∈ μ_{q+1}` of the number of points of `D` fixed by `t·g`. On p-singular
//! classes `z·u` the value is `θ(z)·Q(u)` with the Green function `Q(u) = 1`.

use serde::Serialize;
use thiserror::Error;

use crate::classfn::{fixed_points_p1, ClassFn};
use crate::context::Sl2Context;
use crate::cyclotomic::CycNum;
use crate::fields::{FieldTower, Fq2, Mat2};
use crate::group::{scalar_action_matrix, ElementKind};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DlError {
    #[error("matrix is singular")]
    SingularMatrix,
    #[error("the trivial torus character has its own entry point")]
    TrivialThetaRequested,
    #[error("torus character index {j} out of range 1..={q}")]
    IndexOutOfRange { j: u32, q: u32 },
    #[error("Lefschetz numbers are only point counts on p-regular elements")]
    PSingularInput,
}

/// `θ_j(γ^k) = ζ_{q+1}^{jk}` on `μ_{q+1} = ⟨γ⟩`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct TorusChar {
    pub j: u32,
    pub q: u32,
}

impl TorusChar {
    pub fn new(j: u32, q: u32) -> Self {
        TorusChar { j: j % (q + 1), q }
    }

    pub fn is_trivial(&self) -> bool {
        self.j == 0
    }

    /// Exponent of `ζ_{q+1}` in `θ_j(γ^k)`.
    pub fn exponent(&self, k: i64) -> i64 {
        (self.j as i64 * k).rem_euclid(self.q as i64 + 1)
    }

    pub fn value(&self, ctx: &Sl2Context, k: i64) -> CycNum {
        ctx.cyclo
            .root_of_unity(self.q + 1, self.exponent(k))
            .expect("q+1 divides the conductor")
    }

    /// `θ_j · θ_{j'}`.
    pub fn product(&self, other: &TorusChar) -> TorusChar {
        TorusChar::new(self.j + other.j, self.q)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DlCharacter {
    pub j: u32,
    pub values: ClassFn,
}

/// Fixed points of `(x, y) ↦ M(x, y)` on `D`, read as a Lefschetz number.
///
/// The identity gives the Euler characteristic `1 - q²`. Otherwise a fixed
/// point lies on the eigenvalue-1 line `λv`, and `λ^{q+1}·c(v) = 1` with
/// `c(v) = xy^q - x^q y` has `q + 1` roots exactly when `c(v) ≠ 0`.
pub fn lefschetz_d(m: &Mat2, tower: &FieldTower) -> Result<i64, DlError> {
    if m.det(tower).is_zero() {
        return Err(DlError::SingularMatrix);
    }
    let q = tower.q() as i64;
    if m.is_identity() {
        return Ok(1 - q * q);
    }
    let Some((x, y)) = m.fixed_line(tower) else {
        return Ok(0);
    };
    let c = tower.sub(tower.mul(x, tower.frobenius(y)), tower.mul(tower.frobenius(x), y));
    Ok(if c.is_zero() { 0 } else { q + 1 })
}

fn check_index(ctx: &Sl2Context, j: u32) -> Result<TorusChar, DlError> {
    let q = ctx.q();
    match j {
        0 => Err(DlError::TrivialThetaRequested),
        j if j > q => Err(DlError::IndexOutOfRange { j, q }),
        j => Ok(TorusChar::new(j, q)),
    }
}

/// `(1/(q+1)) Σ_t θ(t⁻¹)·L_D(t·g)` for a p-regular representative `g`.
fn averaged_value(ctx: &Sl2Context, theta: TorusChar, element: usize) -> CycNum {
    let tower = &*ctx.tower;
    let g = ctx.group.element(element);
    let q = ctx.q() as i64;
    let step = (ctx.cyclo.conductor() / (ctx.q() + 1)) as i64;
    let terms = tower.mu_subgroup().into_iter().enumerate().map(|(k, t)| {
        let scalar = scalar_action_matrix(tower, t).expect("t is in μ_(q+1)");
        let count = lefschetz_d(&scalar.mul(g, tower), tower).expect("invertible");
        (step * theta.exponent(-(k as i64)), count)
    });
    ctx.cyclo.from_exponents(terms.collect::<Vec<_>>()).div_int(q + 1)
}

/// `θ(z)·Q(u)` on a p-singular class `z·u`.
fn green_value(ctx: &Sl2Context, theta: TorusChar, kind: ElementKind) -> CycNum {
    match kind {
        ElementKind::Unipotent => ctx.cyclo.one(),
        ElementKind::MinusUnipotent => {
            // -1 = γ^{(q+1)/2}
            theta.value(ctx, (ctx.q() as i64 + 1) / 2)
        }
        _ => unreachable!("p-singular elements are ±unipotent"),
    }
}

fn character_for(ctx: &Sl2Context, theta: TorusChar) -> ClassFn {
    let values = ctx
        .classes
        .iter()
        .map(|class| {
            if class.p_regular {
                averaged_value(ctx, theta, class.representative)
            } else {
                green_value(ctx, theta, class.kind)
            }
        })
        .collect();
    ClassFn::new_virtual(values)
}

/// `R^{θ_j}` for `j = 1..=q`.
pub fn dl_character(ctx: &Sl2Context, j: u32) -> Result<DlCharacter, DlError> {
    let theta = check_index(ctx, j)?;
    Ok(DlCharacter { j, values: character_for(ctx, theta) })
}

/// All of `R^{θ_1}, .., R^{θ_q}`.
pub fn dl_characters(ctx: &Sl2Context) -> Vec<DlCharacter> {
    (1..=ctx.q()).map(|j| dl_character(ctx, j).expect("index in range")).collect()
}

/// `R^{θ_0}` by the same averaging; equals `1 - St`.
pub fn dl_trivial_character(ctx: &Sl2Context) -> ClassFn {
    character_for(ctx, TorusChar::new(0, ctx.q()))
}

/// Lefschetz number of a p-regular `g` on the projective curve `C`: affine
/// fixed points plus fixed points among the `q + 1` points at infinity.
pub fn lefschetz_c(ctx: &Sl2Context, element: usize) -> Result<i64, DlError> {
    if !ctx.group.is_p_regular(element) {
        return Err(DlError::PSingularInput);
    }
    let q = ctx.q() as i64;
    if element == ctx.group.identity() {
        return Ok(2 - q * (q - 1));
    }
    let affine = lefschetz_d(ctx.group.element(element), &ctx.tower)?;
    Ok(affine + fixed_points_p1(ctx, element) as i64)
}

/// Brute-force count of the points of `D(F_{q²})` fixed by `M`. For even `q`
/// this is every fixed point of a non-identity semisimple `M`.
pub fn fixed_points_on_d_bruteforce(m: &Mat2, tower: &FieldTower) -> usize {
    let on_curve = |x: Fq2, y: Fq2| {
        let lhs = tower.sub(tower.mul(x, tower.frobenius(y)), tower.mul(tower.frobenius(x), y));
        lhs == Fq2::ONE
    };
    let mut count = 0;
    for x in tower.elements() {
        for y in tower.elements() {
            if on_curve(x, y) && m.apply((x, y), tower) == (x, y) {
                count += 1;
            }
        }
    }
    count
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::classfn::{inner_product, steinberg, trivial};

    #[test]
    fn lefschetz_d_examples() {
        let f = FieldTower::new(3).unwrap();
        assert_eq!(lefschetz_d(&Mat2::identity(), &f), Ok(-8));
        let t = f.gamma();
        assert_eq!(lefschetz_d(&Mat2::scalar(t), &f), Ok(0));
        let u = Mat2::new(Fq2::ONE, Fq2::ONE, Fq2::ZERO, Fq2::ONE);
        assert_eq!(lefschetz_d(&u, &f), Ok(0));
        let zero = Mat2::scalar(Fq2::ZERO);
        assert_eq!(lefschetz_d(&zero, &f), Err(DlError::SingularMatrix));
    }

    #[test]
    fn lefschetz_d_matches_bruteforce_on_torus_twists() {
        // for even q, c(v) lies in F_q, so all q+1 solutions λ are in F_{q²}
        for q in [2, 4, 8] {
            let ctx = Sl2Context::new(q).unwrap();
            let f = &*ctx.tower;
            for class in ctx.classes.iter().filter(|c| c.p_regular) {
                let g = ctx.group.element(class.representative);
                if g.is_identity() {
                    continue;
                }
                for t in f.mu_subgroup() {
                    let m = Mat2::scalar(t).mul(g, f);
                    if m.is_identity() {
                        continue;
                    }
                    let expected = lefschetz_d(&m, f).unwrap();
                    assert_eq!(fixed_points_on_d_bruteforce(&m, f) as i64, expected, "q={q}");
                }
            }
        }
    }

    #[test]
    fn dimension_is_one_minus_q() {
        for q in [2, 3, 5] {
            let ctx = Sl2Context::new(q).unwrap();
            for r in dl_characters(&ctx) {
                assert_eq!(r.values.value(ctx.identity_class()).as_i64(), Some(1 - q as i64));
            }
        }
    }

    #[test]
    fn q2_three_cycle_value() {
        let ctx = Sl2Context::new(2).unwrap();
        let r = dl_character(&ctx, 1).unwrap();
        let c = ctx.classes.iter().position(|c| c.order == 3).unwrap();
        assert_eq!(r.values.value(c).as_i64(), Some(-1));
    }

    #[test]
    fn split_classes_vanish_q5() {
        let ctx = Sl2Context::new(5).unwrap();
        let split: Vec<usize> = ctx.classes.find_kind(ElementKind::Split).collect();
        assert!(!split.is_empty());
        for r in dl_characters(&ctx) {
            for &c in &split {
                assert!(r.values.value(c).is_zero());
            }
        }
        // brute force: t·g - 1 is invertible for every t and split regular g
        let f = &*ctx.tower;
        for &c in &split {
            let g = ctx.group.element(ctx.classes.get(c).representative);
            for t in f.mu_subgroup() {
                let m = Mat2::scalar(t).mul(g, f);
                let shifted = Mat2::new(f.sub(m.a, Fq2::ONE), m.b, m.c, f.sub(m.d, Fq2::ONE));
                assert!(!shifted.det(f).is_zero());
            }
        }
    }

    #[test]
    fn index_errors() {
        let ctx = Sl2Context::new(3).unwrap();
        assert_eq!(dl_character(&ctx, 0).unwrap_err(), DlError::TrivialThetaRequested);
        assert_eq!(dl_character(&ctx, 4).unwrap_err(), DlError::IndexOutOfRange { j: 4, q: 3 });
    }

    #[test]
    fn trivial_theta_is_one_minus_steinberg() {
        for q in [2, 3, 4, 5, 7] {
            let ctx = Sl2Context::new(q).unwrap();
            let r0 = dl_trivial_character(&ctx);
            assert_eq!(r0, &trivial(&ctx) - &steinberg(&ctx), "q={q}");
        }
    }

    #[test]
    fn lefschetz_c_examples() {
        let ctx = Sl2Context::new(3).unwrap();
        assert_eq!(lefschetz_c(&ctx, ctx.group.identity()), Ok(-4));
        assert_eq!(lefschetz_c(&ctx, ctx.group.minus_identity()), Ok(4));
        let u = ctx.classes.find_kind(ElementKind::Unipotent).next().unwrap();
        let rep = ctx.classes.get(u).representative;
        assert_eq!(lefschetz_c(&ctx, rep), Err(DlError::PSingularInput));

        let ctx = Sl2Context::new(2).unwrap();
        let c = ctx.classes.iter().find(|c| c.order == 3).unwrap();
        assert_eq!(lefschetz_c(&ctx, c.representative), Ok(0));
    }

    #[test]
    fn orthogonality_q5() {
        let ctx = Sl2Context::new(5).unwrap();
        let rs = dl_characters(&ctx);
        for a in &rs {
            for b in &rs {
                let expected = (a.j == b.j) as i64 + (a.j == 6 - b.j) as i64;
                let ip = inner_product(&ctx, &a.values, &b.values).unwrap();
                assert_eq!(ip.as_i64(), Some(expected), "j={} j'={}", a.j, b.j);
            }
            assert!(inner_product(&ctx, &a.values, &trivial(&ctx)).unwrap().is_zero());
        }
    }

    #[test]
    fn torus_characters_multiply() {
        let a = TorusChar::new(2, 4);
        let b = TorusChar::new(4, 4);
        assert_eq!(a.product(&b), TorusChar::new(1, 4));
        assert!(TorusChar::new(5, 4).is_trivial());
    }
}
