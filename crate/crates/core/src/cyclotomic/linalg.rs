//! Exact Gaussian elimination over `Q` and over `Q(ζ_N)`.

use num_rational::BigRational;
use num_traits::Zero;

use super::{CycError, CycNum};

/// Solves `A x = b` over `Q`; `None` when `A` is singular.
pub(crate) fn solve_rational(
    mut a: Vec<Vec<BigRational>>,
    mut b: Vec<BigRational>,
) -> Option<Vec<BigRational>> {
    let n = b.len();
    for col in 0..n {
        let pivot = (col..n).find(|&r| !a[r][col].is_zero())?;
        a.swap(col, pivot);
        b.swap(col, pivot);
        let inv = a[col][col].recip();
        for r in col + 1..n {
            if a[r][col].is_zero() {
                continue;
            }
            let factor = &a[r][col] * &inv;
            for c in col..n {
                let delta = &factor * &a[col][c];
                a[r][c] -= delta;
            }
            let delta = &factor * &b[col];
            b[r] -= delta;
        }
    }
    let mut x = vec![BigRational::zero(); n];
    for row in (0..n).rev() {
        let mut acc = b[row].clone();
        for c in row + 1..n {
            acc -= &a[row][c] * &x[c];
        }
        x[row] = acc / &a[row][row];
    }
    Some(x)
}

/// `PA = LU` over `Q(ζ_N)`, pivoting on the first nonzero entry of each column.
#[derive(Debug, Clone)]
pub struct CycLu {
    lower: Vec<Vec<CycNum>>,
    upper: Vec<Vec<CycNum>>,
    pivot_inverses: Vec<CycNum>,
    perm: Vec<usize>,
    swaps: usize,
}

impl CycLu {
    pub fn factor(matrix: &[Vec<CycNum>]) -> Result<Self, CycError> {
        let n = matrix.len();
        if n == 0 {
            return Err(CycError::DimensionMismatch("empty matrix".into()));
        }
        if matrix.iter().any(|row| row.len() != n) {
            return Err(CycError::DimensionMismatch("matrix is not square".into()));
        }
        let field = matrix[0][0].field().clone();
        let mut upper: Vec<Vec<CycNum>> = matrix.to_vec();
        let mut lower = vec![vec![field.zero(); n]; n];
        let mut perm: Vec<usize> = (0..n).collect();
        let mut pivot_inverses = Vec::with_capacity(n);
        let mut swaps = 0;
        for col in 0..n {
            let pivot = (col..n)
                .find(|&r| !upper[r][col].is_zero())
                .ok_or(CycError::SingularMatrix)?;
            if pivot != col {
                upper.swap(col, pivot);
                lower.swap(col, pivot);
                perm.swap(col, pivot);
                swaps += 1;
            }
            let inv = upper[col][col].inverse().ok_or(CycError::SingularMatrix)?;
            for r in col + 1..n {
                if upper[r][col].is_zero() {
                    continue;
                }
                let factor = &upper[r][col] * &inv;
                for c in col..n {
                    let delta = &factor * &upper[col][c];
                    upper[r][c] -= &delta;
                }
                lower[r][col] = factor;
            }
            pivot_inverses.push(inv);
        }
        for (i, row) in lower.iter_mut().enumerate() {
            row[i] = field.one();
        }
        Ok(CycLu { lower, upper, pivot_inverses, perm, swaps })
    }

    pub fn dim(&self) -> usize {
        self.perm.len()
    }

    pub fn solve(&self, b: &[CycNum]) -> Result<Vec<CycNum>, CycError> {
        let n = self.dim();
        if b.len() != n {
            return Err(CycError::DimensionMismatch(format!(
                "right-hand side has length {}, expected {n}",
                b.len()
            )));
        }
        let mut y: Vec<CycNum> = Vec::with_capacity(n);
        for i in 0..n {
            let mut acc = b[self.perm[i]].clone();
            for (j, yj) in y.iter().enumerate() {
                if !self.lower[i][j].is_zero() {
                    acc -= &(&self.lower[i][j] * yj);
                }
            }
            y.push(acc);
        }
        let mut x = vec![y[0].field().zero(); n];
        for i in (0..n).rev() {
            let mut acc = y[i].clone();
            for j in i + 1..n {
                if !self.upper[i][j].is_zero() {
                    acc -= &(&self.upper[i][j] * &x[j]);
                }
            }
            x[i] = &acc * &self.pivot_inverses[i];
        }
        Ok(x)
    }

    pub fn determinant(&self) -> CycNum {
        let mut det = self.upper[0][0].field().one();
        for i in 0..self.dim() {
            det = &det * &self.upper[i][i];
        }
        if self.swaps % 2 == 1 {
            -det
        } else {
            det
        }
    }
}

/// The unique solution of `A x = b`.
pub fn linear_solve(a: &[Vec<CycNum>], b: &[CycNum]) -> Result<Vec<CycNum>, CycError> {
    CycLu::factor(a)?.solve(b)
}
