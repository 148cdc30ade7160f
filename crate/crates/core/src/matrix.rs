//! Small dense integer and rational matrix routines: Smith normal form with
//! transforms, exact inverse, and signature by congruence diagonalization.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::exact::Rational;

pub type IntMatrix = Vec<Vec<BigInt>>;
pub type RatMatrix = Vec<Vec<Rational>>;

pub fn to_big(m: &[Vec<i64>]) -> IntMatrix {
    m.iter().map(|row| row.iter().map(|&x| BigInt::from(x)).collect()).collect()
}

pub fn identity(n: usize) -> IntMatrix {
    (0..n).map(|i| (0..n).map(|j| if i == j { BigInt::one() } else { BigInt::zero() }).collect()).collect()
}

pub fn mat_mul(a: &IntMatrix, b: &IntMatrix) -> IntMatrix {
    let inner = b.len();
    let cols = b.first().map_or(0, Vec::len);
    a.iter()
        .map(|row| (0..cols).map(|j| (0..inner).fold(BigInt::zero(), |acc, k| acc + &row[k] * &b[k][j])).collect())
        .collect()
}

pub fn mat_vec(a: &IntMatrix, x: &[BigInt]) -> Vec<BigInt> {
    a.iter().map(|row| row.iter().zip(x).fold(BigInt::zero(), |acc, (r, v)| acc + r * v)).collect()
}

/// Smith normal form `U * A * V = D` with `U`, `V` unimodular and the diagonal
/// of `D` non-negative with each entry dividing the next.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Smith {
    pub diagonal: Vec<BigInt>,
    pub u: IntMatrix,
    pub u_inv: IntMatrix,
    pub v: IntMatrix,
}

struct SmithCalc {
    a: IntMatrix,
    u: IntMatrix,
    u_inv: IntMatrix,
    v: IntMatrix,
    n: usize,
}

impl SmithCalc {
    // row_i += m * row_j
    fn add_row(&mut self, i: usize, j: usize, m: &BigInt) {
        for c in 0..self.n {
            let d = &self.a[j][c] * m;
            self.a[i][c] += d;
            let d = &self.u[j][c] * m;
            self.u[i][c] += d;
        }
        // U_inv <- U_inv * E^{-1}: col_j -= m * col_i
        for r in 0..self.n {
            let d = &self.u_inv[r][i] * m;
            self.u_inv[r][j] -= d;
        }
    }

    // col_i += m * col_j
    fn add_col(&mut self, i: usize, j: usize, m: &BigInt) {
        for r in 0..self.n {
            let d = &self.a[r][j] * m;
            self.a[r][i] += d;
            let d = &self.v[r][j] * m;
            self.v[r][i] += d;
        }
    }

    fn swap_rows(&mut self, i: usize, j: usize) {
        if i == j {
            return;
        }
        self.a.swap(i, j);
        self.u.swap(i, j);
        for row in self.u_inv.iter_mut() {
            row.swap(i, j);
        }
    }

    fn swap_cols(&mut self, i: usize, j: usize) {
        if i == j {
            return;
        }
        for row in self.a.iter_mut().chain(self.v.iter_mut()) {
            row.swap(i, j);
        }
    }

    fn negate_row(&mut self, i: usize) {
        for c in 0..self.n {
            self.a[i][c] = -&self.a[i][c];
            self.u[i][c] = -&self.u[i][c];
            self.u_inv[c][i] = -&self.u_inv[c][i];
        }
    }

    fn smallest_nonzero(&self, t: usize) -> Option<(usize, usize)> {
        let mut best: Option<(usize, usize)> = None;
        for i in t..self.n {
            for j in t..self.n {
                if self.a[i][j].is_zero() {
                    continue;
                }
                if best.is_none_or(|(bi, bj)| self.a[i][j].abs() < self.a[bi][bj].abs()) {
                    best = Some((i, j));
                }
            }
        }
        best
    }

    fn run(&mut self) {
        for t in 0..self.n {
            loop {
                let Some((pi, pj)) = self.smallest_nonzero(t) else { return };
                self.swap_rows(t, pi);
                self.swap_cols(t, pj);
                let mut dirty = false;
                for i in t + 1..self.n {
                    if !self.a[i][t].is_zero() {
                        let q = self.a[i][t].div_floor(&self.a[t][t]);
                        self.add_row(i, t, &-q);
                        dirty |= !self.a[i][t].is_zero();
                    }
                }
                for j in t + 1..self.n {
                    if !self.a[t][j].is_zero() {
                        let q = self.a[t][j].div_floor(&self.a[t][t]);
                        self.add_col(j, t, &-q);
                        dirty |= !self.a[t][j].is_zero();
                    }
                }
                if dirty {
                    continue;
                }
                // Pivot must divide the rest of the block.
                let bad =
                    (t + 1..self.n).find(|&i| (t + 1..self.n).any(|j| !(&self.a[i][j] % &self.a[t][t]).is_zero()));
                match bad {
                    Some(i) => self.add_row(t, i, &BigInt::one()),
                    None => break,
                }
            }
            if self.a[t][t].is_negative() {
                self.negate_row(t);
            }
        }
    }
}

pub fn smith(a: &IntMatrix) -> Smith {
    let n = a.len();
    let mut calc = SmithCalc { a: a.clone(), u: identity(n), u_inv: identity(n), v: identity(n), n };
    calc.run();
    Smith { diagonal: (0..n).map(|i| calc.a[i][i].clone()).collect(), u: calc.u, u_inv: calc.u_inv, v: calc.v }
}

/// Exact inverse over the rationals by Gauss-Jordan elimination.
pub fn rational_inverse(a: &IntMatrix) -> Result<RatMatrix> {
    let n = a.len();
    let mut m: RatMatrix =
        a.iter().map(|row| row.iter().map(|x| Rational::from_integer(x.clone())).collect()).collect();
    let mut inv: RatMatrix =
        identity(n).into_iter().map(|row| row.into_iter().map(Rational::from_integer).collect()).collect();
    for col in 0..n {
        let pivot = (col..n).find(|&r| !m[r][col].is_zero()).ok_or(Error::SingularMatrix)?;
        m.swap(col, pivot);
        inv.swap(col, pivot);
        let scale = m[col][col].recip();
        for j in 0..n {
            m[col][j] *= &scale;
            inv[col][j] *= &scale;
        }
        for r in 0..n {
            if r == col || m[r][col].is_zero() {
                continue;
            }
            let f = m[r][col].clone();
            for j in 0..n {
                let d = &m[col][j] * &f;
                m[r][j] -= d;
                let d = &inv[col][j] * &f;
                inv[r][j] -= d;
            }
        }
    }
    Ok(inv)
}

/// Signature of a symmetric nondegenerate matrix, computed exactly by
/// symmetric Gaussian elimination. A block with zero diagonal but a nonzero
/// off-diagonal entry `a_ij` is handled by adding row/column `j` to `i`,
/// which makes the new pivot `2 a_ij`.
pub fn signature(a: &IntMatrix) -> Result<i64> {
    let n = a.len();
    let mut m: RatMatrix =
        a.iter().map(|row| row.iter().map(|x| Rational::from_integer(x.clone())).collect()).collect();
    let mut sig = 0;
    for t in 0..n {
        if let Some(i) = (t..n).find(|&i| !m[i][i].is_zero()) {
            m.swap(t, i);
            for row in m.iter_mut() {
                row.swap(t, i);
            }
        } else {
            let (i, j) = (t..n)
                .flat_map(|i| (t..n).map(move |j| (i, j)))
                .find(|&(i, j)| !m[i][j].is_zero())
                .ok_or(Error::SingularMatrix)?;
            // m[i][i] = m[j][j] = 0 here, so the new m[i][i] is 2 m[i][j].
            for c in 0..n {
                let d = m[j][c].clone();
                m[i][c] += d;
            }
            for r in 0..n {
                let d = m[r][j].clone();
                m[r][i] += d;
            }
            m.swap(t, i);
            for row in m.iter_mut() {
                row.swap(t, i);
            }
        }
        let pivot = m[t][t].clone();
        sig += if pivot.is_positive() { 1 } else { -1 };
        // Schur complement: congruence by the matching row and column ops.
        let row_t = m[t].clone();
        for r in t + 1..n {
            if row_t[r].is_zero() {
                continue;
            }
            let f = &row_t[r] / &pivot;
            for c in t + 1..n {
                let d = &row_t[c] * &f;
                m[r][c] -= d;
            }
        }
        for c in t + 1..n {
            m[t][c] = Rational::zero();
            m[c][t] = Rational::zero();
        }
    }
    Ok(sig)
}
