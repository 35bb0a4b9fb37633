//! The Drinfeld curve `C: XY^q - X^qY - Z^{q+1} = 0` over `F_q`.
//!
//! Holomorphic differentials on a smooth plane curve of degree `d` are modeled
//! by homogeneous forms of degree `d - 3` (here `q - 2`); `g ∈ SL₂(F_q)` acts
//! on `X, Y` by the inverse transpose and fixes `Z`.

use serde::Serialize;
use thiserror::Error;

use crate::brauer::explicit::{brauer_value_of_matrix, monomials, substitution_matrix};
use crate::brauer::BrauerFn;
use crate::context::Sl2Context;
use crate::fields::{prime_power, FieldTower, Fq2, Mat2};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CurveError {
    #[error("point counts are available over F_q and F_(q^2) only, not degree {0}")]
    BadExtensionDegree(u32),
    #[error("degree-genus gives {plane}, point count gives {weil:?}")]
    GenusMismatch { plane: i64, weil: Option<i64> },
    #[error("{0} is not a prime power >= 2")]
    NotAPrimePower(u32),
}

/// A form `Σ c·X^a Y^b Z^c` with integer coefficients read mod `p`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct HomogeneousForm {
    pub p: u32,
    pub terms: Vec<(i64, [u32; 3])>,
}

impl HomogeneousForm {
    pub fn new(p: u32, terms: Vec<(i64, [u32; 3])>) -> Self {
        let terms = terms
            .into_iter()
            .map(|(c, e)| (c.rem_euclid(p as i64), e))
            .filter(|(c, _)| *c != 0)
            .collect();
        HomogeneousForm { p, terms }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn partial(&self, var: usize) -> HomogeneousForm {
        let terms = self
            .terms
            .iter()
            .filter(|(_, e)| e[var] > 0)
            .map(|&(c, mut e)| {
                let k = e[var] as i64;
                e[var] -= 1;
                (c * k, e)
            })
            .collect();
        HomogeneousForm::new(self.p, terms)
    }

    pub fn eval(&self, f: &FieldTower, point: [Fq2; 3]) -> Fq2 {
        self.terms.iter().fold(Fq2::ZERO, |acc, (c, e)| {
            let mono = (0..3).fold(f.from_prime_field(*c), |m, i| f.mul(m, f.pow(point[i], e[i] as i64)));
            f.add(acc, mono)
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CurveSpec {
    pub q: u32,
    pub degree: u32,
    pub form: HomogeneousForm,
}

impl CurveSpec {
    pub fn new(q: u32) -> Result<Self, CurveError> {
        let (p, _) = prime_power(q).ok_or(CurveError::NotAPrimePower(q))?;
        let form = HomogeneousForm::new(
            p,
            vec![(1, [1, q, 0]), (-1, [q, 1, 0]), (-1, [0, 0, q + 1])],
        );
        Ok(CurveSpec { q, degree: q + 1, form })
    }

    /// `f(g⁻¹(X, Y), Z) = f(X, Y, Z)` checked at every point of `F_{q²}³`.
    /// Each variable has degree below `q²`, so this is equality of polynomials.
    pub fn is_invariant_under(&self, f: &FieldTower, g: &Mat2) -> bool {
        let ginv = g.inverse(f).expect("invertible");
        for x in f.elements() {
            for y in f.elements() {
                let (x2, y2) = ginv.apply((x, y), f);
                for z in f.elements() {
                    if self.form.eval(f, [x2, y2, z]) != self.form.eval(f, [x, y, z]) {
                        return false;
                    }
                }
            }
        }
        true
    }
}

/// Smoothness of the Drinfeld curve, decided from its partial derivatives.
pub fn smoothness_check(q: u32) -> Result<bool, CurveError> {
    Ok(is_smooth(&CurveSpec::new(q)?.form))
}

/// True when the partial derivatives have no common projective zero.
///
/// Every partial of the Drinfeld form is a single monomial mod `p`; a
/// monomial vanishes on a coordinate stratum iff it involves a variable that
/// is zero there. Partials with several terms are never used as witnesses, so
/// a `false` answer for other forms only means "not certified".
pub fn is_smooth(form: &HomogeneousForm) -> bool {
    let partials: Vec<HomogeneousForm> = (0..3).map(|v| form.partial(v)).collect();
    // zero_mask bit i set ⇔ coordinate i vanishes; all-zero is not a point
    for zero_mask in 0u32..7 {
        let some_partial_nonzero = partials.iter().any(|d| match d.terms.as_slice() {
            [(_, e)] => (0..3).all(|i| e[i] == 0 || zero_mask & (1 << i) == 0),
            _ => false,
        });
        if !some_partial_nonzero {
            return false;
        }
    }
    true
}

/// `#C(F_{q^n})` for `n ∈ {1, 2}` by enumeration.
pub fn count_points(tower: &FieldTower, n: u32) -> Result<u64, CurveError> {
    let field: Vec<Fq2> = match n {
        1 => tower.base_field().to_vec(),
        2 => tower.elements().collect(),
        _ => return Err(CurveError::BadExtensionDegree(n)),
    };
    let f = tower;
    let q = f.q() as i64;
    let affine_lhs = |x: Fq2, y: Fq2| f.sub(f.mul(x, f.pow(y, q)), f.mul(f.pow(x, q), y));
    let affine = field
        .iter()
        .map(|&x| field.iter().filter(|&&y| affine_lhs(x, y) == Fq2::ONE).count() as u64)
        .sum::<u64>();
    // Z = 0: [1 : y : 0] and [0 : 1 : 0]
    let at_infinity = field.iter().filter(|&&y| affine_lhs(Fq2::ONE, y).is_zero()).count() as u64 + 1;
    Ok(affine + at_infinity)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct GenusReport {
    /// `(d-1)(d-2)/2`
    pub plane: i64,
    /// `g` solving `#C(F_{q²}) = q² + 1 + 2gq`, when that has an integer solution.
    pub weil: Option<i64>,
    pub points_fq2: u64,
}

impl GenusReport {
    pub fn routes_agree(&self) -> bool {
        self.weil == Some(self.plane)
    }
}

/// Both genus computations, without judging whether they agree.
pub fn genus_report(tower: &FieldTower) -> Result<GenusReport, CurveError> {
    let q = tower.q() as i64;
    let d = q + 1;
    let plane = (d - 1) * (d - 2) / 2;
    let points_fq2 = count_points(tower, 2)?;
    let excess = points_fq2 as i64 - q * q - 1;
    let weil = (excess % (2 * q) == 0).then_some(excess / (2 * q));
    Ok(GenusReport { plane, weil, points_fq2 })
}

/// The genus, provided the degree-genus formula and the maximal-curve point
/// count agree.
///
/// For odd `q` every affine point `(x, y)` over `F_{q²}` has
/// `(xy^q - x^qy)^q = -(xy^q - x^qy)`, so the affine part is empty there and
/// the count-based route cannot agree.
pub fn genus(tower: &FieldTower) -> Result<i64, CurveError> {
    let report = genus_report(tower)?;
    if report.routes_agree() {
        Ok(report.plane)
    } else {
        Err(CurveError::GenusMismatch { plane: report.plane, weil: report.weil })
    }
}

/// Degree-`(q-2)` monomials `X^aY^bZ^c` spanning the model of `H⁰(C, Ω¹)`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CanonicalModel {
    pub monomials: Vec<[u32; 3]>,
}

impl CanonicalModel {
    pub fn new(q: u32) -> Self {
        let monomials = monomials(3, q - 2).into_iter().map(|m| [m[0], m[1], m[2]]).collect();
        CanonicalModel { monomials }
    }

    pub fn dim(&self) -> usize {
        self.monomials.len()
    }
}

/// Brauer character of the canonical model, from eigenvalues.
///
/// In eigen-coordinates of `g⁻ᵀ` on `(X, Y)` (eigenvalues `α⁻¹, α`) the
/// monomial `X^aY^bZ^c` is an eigenvector with eigenvalue `α^{b-a}`.
pub fn canonical_brauer(ctx: &Sl2Context) -> BrauerFn {
    let model = CanonicalModel::new(ctx.q());
    let step = (ctx.cyclo.conductor() / ctx.tower.unit_order()) as i64;
    let values = ctx
        .classes
        .p_regular()
        .iter()
        .map(|&c| {
            let alpha = ctx.eigenvalue(c).expect("p-regular class");
            let log = ctx.tower.discrete_log(alpha).expect("unit") as i64;
            ctx.cyclo.from_exponents(
                model.monomials.iter().map(|[a, b, _]| (step * log * (*b as i64 - *a as i64), 1)),
            )
        })
        .collect();
    BrauerFn { values }
}

/// The same Brauer character from explicit matrices of `g` on the forms.
pub fn canonical_brauer_explicit(ctx: &Sl2Context) -> BrauerFn {
    let f = &*ctx.tower;
    let degree = ctx.q() - 2;
    let values = ctx
        .classes
        .p_regular()
        .iter()
        .map(|&c| {
            let g = ctx.group.element(ctx.classes.get(c).representative);
            // coordinate functions pull back: (X, Y) ↦ g⁻ᵀ (X, Y), Z ↦ Z
            let h = g.inverse(f).expect("invertible").transpose();
            let images = vec![
                vec![h.a, h.b, Fq2::ZERO],
                vec![h.c, h.d, Fq2::ZERO],
                vec![Fq2::ZERO, Fq2::ZERO, Fq2::ONE],
            ];
            let m = substitution_matrix(f, &images, degree);
            brauer_value_of_matrix(ctx, &m).expect("p-regular elements act semisimply")
        })
        .collect();
    BrauerFn { values }
}
