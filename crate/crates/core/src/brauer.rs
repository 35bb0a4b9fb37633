//! Brauer characters of `V_i = Sym^i(k²)`, the decomposition map into
//! `G₀(kG)` and integer bookkeeping there.

use std::fmt;
use std::ops::Add;

use serde::Serialize;
use thiserror::Error;

use crate::classfn::ClassFn;
use crate::context::Sl2Context;
use crate::cyclotomic::{CycError, CycLu, CycNum};

pub mod explicit;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum BrauerError {
    #[error("symmetric power index {i} out of range 0..{q}")]
    IndexOutOfRange { i: u32, q: u32 },
    #[error("the Brauer matrix of the symmetric powers is singular")]
    SingularBrauerMatrix,
    #[error("coefficient of [V_{index}] is {value}, not an integer")]
    NonIntegralSolution { index: usize, value: String },
    #[error("expected {expected} p-regular values, got {got}")]
    LengthMismatch { expected: usize, got: usize },
}

/// One value per p-regular class, in class order.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BrauerFn {
    pub values: Vec<CycNum>,
}

impl BrauerFn {
    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn scale_int(&self, n: i64) -> BrauerFn {
        BrauerFn { values: self.values.iter().map(|v| v.scale_int(n)).collect() }
    }
}

impl Add for &BrauerFn {
    type Output = BrauerFn;
    fn add(self, rhs: &BrauerFn) -> BrauerFn {
        assert_eq!(self.len(), rhs.len());
        BrauerFn { values: self.values.iter().zip(&rhs.values).map(|(a, b)| a + b).collect() }
    }
}

/// Componentwise complex conjugation; the Brauer character of the dual.
pub fn conj_brauer(f: &BrauerFn) -> BrauerFn {
    BrauerFn { values: f.values.iter().map(CycNum::conj).collect() }
}

/// Coordinates in the basis `[V_0], .., [V_{q-1}]` of `G₀(kG)`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(transparent)]
pub struct G0Vector(pub Vec<i64>);

impl G0Vector {
    pub fn zero(q: usize) -> Self {
        G0Vector(vec![0; q])
    }

    /// `[V_i]`; an index of `-1` is the zero module.
    pub fn basis(q: usize, i: i64) -> Self {
        let mut v = G0Vector::zero(q);
        if i >= 0 {
            v.0[i as usize] = 1;
        }
        v
    }

    pub fn scale(&self, n: i64) -> Self {
        G0Vector(self.0.iter().map(|a| a * n).collect())
    }

    /// `Σ a_i·dim V_i`.
    pub fn dimension(&self) -> i64 {
        self.0.iter().enumerate().map(|(i, a)| a * (i as i64 + 1)).sum()
    }
}

impl Add for &G0Vector {
    type Output = G0Vector;
    fn add(self, rhs: &G0Vector) -> G0Vector {
        G0Vector(self.0.iter().zip(&rhs.0).map(|(a, b)| a + b).collect())
    }
}

impl std::ops::Neg for &G0Vector {
    type Output = G0Vector;
    fn neg(self) -> G0Vector {
        self.scale(-1)
    }
}

impl fmt::Display for G0Vector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(i64::to_string).collect();
        write!(f, "({})", parts.join(","))
    }
}

/// `Σ_{m=0}^{i} ζ^{(i-2m)·log α}` for `α ∈ F_{q²}^×`, the Brauer value of
/// `Sym^i` at an element with eigenvalues `α, α⁻¹`.
pub(crate) fn sym_power_value(ctx: &Sl2Context, alpha: crate::fields::Fq2, i: u32) -> CycNum {
    let step = (ctx.cyclo.conductor() / ctx.tower.unit_order()) as i64;
    let log = ctx.tower.discrete_log(alpha).expect("eigenvalues are units") as i64;
    ctx.cyclo.from_exponents((0..=i as i64).map(|m| (step * log * (i as i64 - 2 * m), 1)))
}

/// Brauer character of `V_i`, `0 ≤ i ≤ q - 1`.
pub fn brauer_character_sym(ctx: &Sl2Context, i: u32) -> Result<BrauerFn, BrauerError> {
    let q = ctx.q();
    if i >= q {
        return Err(BrauerError::IndexOutOfRange { i, q });
    }
    let values = ctx
        .classes
        .p_regular()
        .iter()
        .map(|&c| sym_power_value(ctx, ctx.eigenvalue(c).expect("p-regular class"), i))
        .collect();
    Ok(BrauerFn { values })
}

/// `|G|` at the identity and zero elsewhere.
pub fn regular_character(ctx: &Sl2Context) -> ClassFn {
    let id = ctx.identity_class();
    let values = (0..ctx.classes.len())
        .map(|c| {
            if c == id {
                ctx.cyclo.from_integer(ctx.group_order() as i64)
            } else {
                ctx.cyclo.zero()
            }
        })
        .collect();
    ClassFn::new(values)
}

/// The `q × q` Brauer matrix of `V_0, .., V_{q-1}` (rows) on the p-regular
/// classes (columns), factored once for repeated decompositions.
#[derive(Debug, Clone)]
pub struct BrauerBasis {
    rows: Vec<BrauerFn>,
    lu: CycLu,
}

impl BrauerBasis {
    pub fn new(ctx: &Sl2Context) -> Result<Self, BrauerError> {
        let q = ctx.q();
        let rows: Vec<BrauerFn> =
            (0..q).map(|i| brauer_character_sym(ctx, i)).collect::<Result<_, _>>()?;
        if rows.iter().any(|r| r.len() != q as usize) {
            return Err(BrauerError::SingularBrauerMatrix);
        }
        // Unknowns are the multiplicities a_i, so the system matrix is the transpose.
        let system: Vec<Vec<CycNum>> = (0..q as usize)
            .map(|c| rows.iter().map(|r| r.values[c].clone()).collect())
            .collect();
        let lu = CycLu::factor(&system).map_err(|e| match e {
            CycError::SingularMatrix => BrauerError::SingularBrauerMatrix,
            _ => BrauerError::SingularBrauerMatrix,
        })?;
        Ok(BrauerBasis { rows, lu })
    }

    pub fn rows(&self) -> &[BrauerFn] {
        &self.rows
    }

    pub fn determinant(&self) -> CycNum {
        self.lu.determinant()
    }

    /// Exact coefficients of `f` in the basis, before the integrality gate.
    pub fn coefficients(&self, f: &BrauerFn) -> Result<Vec<CycNum>, BrauerError> {
        if f.len() != self.rows.len() {
            return Err(BrauerError::LengthMismatch { expected: self.rows.len(), got: f.len() });
        }
        self.lu.solve(&f.values).map_err(|_| BrauerError::SingularBrauerMatrix)
    }

    /// Integer coordinates of a Brauer character in `G₀(kG)`.
    pub fn decompose(&self, f: &BrauerFn) -> Result<G0Vector, BrauerError> {
        let coeffs = self.coefficients(f)?;
        coeffs
            .iter()
            .enumerate()
            .map(|(index, c)| {
                c.as_i64().ok_or_else(|| BrauerError::NonIntegralSolution {
                    index,
                    value: c.to_string(),
                })
            })
            .collect::<Result<Vec<_>, _>>()
            .map(G0Vector)
    }

    /// The decomposition map: reduce an ordinary (virtual) character mod p.
    pub fn decomposition_map(&self, ctx: &Sl2Context, chi: &ClassFn) -> Result<G0Vector, BrauerError> {
        self.decompose(&BrauerFn { values: chi.restrict_p_regular(ctx) })
    }
}
