//! Brauer characters from explicit matrices over `F_q`.
//!
//! Independent of the eigenvalue formulas: builds the action of a group
//! element on homogeneous forms by substitution, reads off eigenvalue
//! multiplicities as `n - rank(A - λ)` for each `λ ∈ F_{q²}^×`, and lifts.
//! Only meant for cross-checking at small `q`.

use std::collections::HashMap;

use crate::context::Sl2Context;
use crate::cyclotomic::CycNum;
use crate::fields::{FieldTower, Fq2, Mat2};

use super::{BrauerError, BrauerFn};

type Poly = HashMap<Vec<u32>, Fq2>;

/// Exponent vectors of total degree `degree` in `nvars` variables, in
/// lexicographically decreasing order.
pub fn monomials(nvars: usize, degree: u32) -> Vec<Vec<u32>> {
    if nvars == 1 {
        return vec![vec![degree]];
    }
    let mut out = Vec::new();
    for first in (0..=degree).rev() {
        for mut rest in monomials(nvars - 1, degree - first) {
            rest.insert(0, first);
            out.push(rest);
        }
    }
    out
}

fn poly_mul(f: &FieldTower, a: &Poly, b: &Poly) -> Poly {
    let mut out: Poly = HashMap::new();
    for (ea, ca) in a {
        for (eb, cb) in b {
            let e: Vec<u32> = ea.iter().zip(eb).map(|(x, y)| x + y).collect();
            let entry = out.entry(e).or_insert(Fq2::ZERO);
            *entry = f.add(*entry, f.mul(*ca, *cb));
        }
    }
    out.retain(|_, c| !c.is_zero());
    out
}

/// Matrix of the substitution `x_k ↦ Σ_l images[k][l]·x_l` on forms of the
/// given degree; column `j` is the image of the `j`-th monomial.
pub fn substitution_matrix(f: &FieldTower, images: &[Vec<Fq2>], degree: u32) -> Vec<Vec<Fq2>> {
    let nvars = images.len();
    let basis = monomials(nvars, degree);
    let index: HashMap<&Vec<u32>, usize> = basis.iter().enumerate().map(|(i, m)| (m, i)).collect();
    let linear: Vec<Poly> = images
        .iter()
        .map(|row| {
            row.iter()
                .enumerate()
                .filter(|(_, c)| !c.is_zero())
                .map(|(l, &c)| {
                    let mut e = vec![0; nvars];
                    e[l] = 1;
                    (e, c)
                })
                .collect()
        })
        .collect();
    let mut matrix = vec![vec![Fq2::ZERO; basis.len()]; basis.len()];
    for (j, mono) in basis.iter().enumerate() {
        let mut image: Poly = HashMap::from([(vec![0; nvars], Fq2::ONE)]);
        for (k, &e) in mono.iter().enumerate() {
            for _ in 0..e {
                image = poly_mul(f, &image, &linear[k]);
            }
        }
        for (e, c) in image {
            matrix[index[&e]][j] = c;
        }
    }
    matrix
}

/// Substitution images for `P(X, Y) ↦ P(aX + cY, bX + dY)`.
pub fn binary_substitution(g: &Mat2) -> Vec<Vec<Fq2>> {
    vec![vec![g.a, g.c], vec![g.b, g.d]]
}

fn rank(f: &FieldTower, mut m: Vec<Vec<Fq2>>) -> usize {
    let rows = m.len();
    let cols = if rows == 0 { 0 } else { m[0].len() };
    let mut r = 0;
    for c in 0..cols {
        let Some(pivot) = (r..rows).find(|&i| !m[i][c].is_zero()) else {
            continue;
        };
        m.swap(r, pivot);
        let inv = f.inv(m[r][c]).unwrap();
        for i in 0..rows {
            if i == r || m[i][c].is_zero() {
                continue;
            }
            let factor = f.mul(m[i][c], inv);
            for k in c..cols {
                let delta = f.mul(factor, m[r][k]);
                m[i][k] = f.sub(m[i][k], delta);
            }
        }
        r += 1;
    }
    r
}

/// `Σ_λ mult(λ)·lift(λ)` for a matrix diagonalizable over `F_{q²}`; `None`
/// when the eigenspaces in `F_{q²}` do not fill the whole space.
pub fn brauer_value_of_matrix(ctx: &Sl2Context, matrix: &[Vec<Fq2>]) -> Option<CycNum> {
    let f = &*ctx.tower;
    let n = matrix.len();
    let mut total = 0;
    let mut terms = Vec::new();
    let step = (ctx.cyclo.conductor() / f.unit_order()) as i64;
    for lambda in f.elements().skip(1) {
        let shifted: Vec<Vec<Fq2>> = matrix
            .iter()
            .enumerate()
            .map(|(i, row)| {
                row.iter()
                    .enumerate()
                    .map(|(j, &x)| if i == j { f.sub(x, lambda) } else { x })
                    .collect()
            })
            .collect();
        let mult = n - rank(f, shifted);
        if mult > 0 {
            total += mult;
            let log = f.discrete_log(lambda).unwrap() as i64;
            terms.push((step * log, mult as i64));
        }
    }
    (total == n).then(|| ctx.cyclo.from_exponents(terms))
}

/// Brauer character of `Sym^i` computed from explicit `(i+1) × (i+1)` matrices.
pub fn brauer_character_sym_explicit(ctx: &Sl2Context, i: u32) -> Result<BrauerFn, BrauerError> {
    let q = ctx.q();
    if i >= q {
        return Err(BrauerError::IndexOutOfRange { i, q });
    }
    let values = ctx
        .classes
        .p_regular()
        .iter()
        .map(|&c| {
            let g = ctx.group.element(ctx.classes.get(c).representative);
            let m = substitution_matrix(&ctx.tower, &binary_substitution(g), i);
            brauer_value_of_matrix(ctx, &m).expect("p-regular elements act semisimply")
        })
        .collect();
    Ok(BrauerFn { values })
}
