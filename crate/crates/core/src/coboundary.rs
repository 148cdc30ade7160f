//! Extrinsic evaluation of q, t, the linking form and the mu-defect from a
//! spin coboundary, given as its intersection matrix on `H^4(W)` together
//! with the coordinates of the spin class `p_W`.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exact::{int, qz_normalize, QmodZ, Rational};
use crate::matrix::{mat_vec, rational_inverse, signature, smith, to_big, IntMatrix, RatMatrix, Smith};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
struct RawCoboundary {
    lambda: Vec<Vec<i64>>,
    p: Vec<i64>,
}

/// Intersection form `lambda` of `W` with characteristic vector `p`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "RawCoboundary", into = "RawCoboundary")]
pub struct CoboundaryData {
    lambda: Vec<Vec<i64>>,
    p: Vec<i64>,
    #[serde(skip)]
    inverse: RatMatrix,
}

impl TryFrom<RawCoboundary> for CoboundaryData {
    type Error = Error;
    fn try_from(raw: RawCoboundary) -> Result<Self> {
        CoboundaryData::new(raw.lambda, raw.p)
    }
}

impl From<CoboundaryData> for RawCoboundary {
    fn from(cb: CoboundaryData) -> Self {
        RawCoboundary { lambda: cb.lambda, p: cb.p }
    }
}

impl CoboundaryData {
    pub fn new(lambda: Vec<Vec<i64>>, p: Vec<i64>) -> Result<Self> {
        let r = lambda.len();
        if r == 0 {
            return Err(Error::InvalidInput("intersection matrix is empty".into()));
        }
        if lambda.iter().any(|row| row.len() != r) {
            return Err(Error::InvalidInput("intersection matrix is not square".into()));
        }
        if p.len() != r {
            return Err(Error::InvalidInput(format!("p has length {} but lambda is {r}x{r}", p.len())));
        }
        for i in 0..r {
            for j in 0..i {
                if lambda[i][j] != lambda[j][i] {
                    return Err(Error::InvalidInput(format!("lambda is not symmetric at ({i}, {j})")));
                }
            }
            if (lambda[i][i] - p[i]).rem_euclid(2) != 0 {
                return Err(Error::Parity(format!(
                    "p is not characteristic: lambda[{i}][{i}] = {} but p[{i}] = {}",
                    lambda[i][i], p[i]
                )));
            }
        }
        let inverse = rational_inverse(&to_big(&lambda))?;
        Ok(CoboundaryData { lambda, p, inverse })
    }

    /// Disc bundle over `S^4`: `lambda = (n)`, `p_W = p`.
    pub fn rank_one(n: i64, p: i64) -> Result<Self> {
        Self::new(vec![vec![n]], vec![p])
    }

    pub fn from_json(s: &str) -> Result<Self> {
        serde_json::from_str(s).map_err(|e| Error::Parse(e.to_string()))
    }

    pub fn rank(&self) -> usize {
        self.lambda.len()
    }

    pub fn lambda(&self) -> &[Vec<i64>] {
        &self.lambda
    }

    pub fn p(&self) -> &[i64] {
        &self.p
    }

    fn big_lambda(&self) -> IntMatrix {
        to_big(&self.lambda)
    }

    fn check_len(&self, x: &[i64]) -> Result<()> {
        if x.len() != self.rank() {
            return Err(Error::InvalidInput(format!(
                "vector has length {} but the coboundary has rank {}",
                x.len(),
                self.rank()
            )));
        }
        Ok(())
    }

    /// `x . lambda^{-1} y` over the rationals.
    fn pairing(&self, x: &[i64], y: &[i64]) -> Rational {
        let mut acc = Rational::zero();
        for (i, xi) in x.iter().enumerate() {
            if *xi == 0 {
                continue;
            }
            for (j, yj) in y.iter().enumerate() {
                acc += &self.inverse[i][j] * int(xi * yj);
            }
        }
        acc
    }
}

/// `H^4(M)` presented as the cokernel of `lambda`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct H4Presentation {
    /// Nontrivial invariant factors `d_1 | d_2 | ...`.
    pub invariant_factors: Vec<BigInt>,
    /// `U` and `V` with `U * lambda * V` diagonal.
    pub basis_change: (IntMatrix, IntMatrix),
    u_inv: IntMatrix,
    /// Index of the first nontrivial factor on the Smith diagonal.
    offset: usize,
}

impl H4Presentation {
    pub fn order(&self) -> BigInt {
        self.invariant_factors.iter().product()
    }

    /// Coordinates of the class of `x` in `(+) Z/d_i`.
    pub fn coordinates(&self, x: &[i64]) -> Vec<BigInt> {
        let xs: Vec<BigInt> = x.iter().map(|&v| BigInt::from(v)).collect();
        let y = mat_vec(&self.basis_change.0, &xs);
        y[self.offset..].iter().zip(&self.invariant_factors).map(|(yi, d)| yi.mod_floor(d)).collect()
    }

    /// Integral lift in `H^4(W)` of the element with the given coordinates.
    pub fn lift(&self, coords: &[i64]) -> Vec<BigInt> {
        let n = self.u_inv.len();
        let mut e = vec![BigInt::zero(); n];
        for (i, c) in coords.iter().enumerate() {
            e[self.offset + i] = BigInt::from(*c);
        }
        mat_vec(&self.u_inv, &e)
    }
}

pub fn snf_cokernel(cb: &CoboundaryData) -> Result<H4Presentation> {
    let Smith { diagonal, u, u_inv, v } = smith(&cb.big_lambda());
    if diagonal.iter().any(Zero::is_zero) {
        return Err(Error::SingularMatrix);
    }
    let offset = diagonal.iter().take_while(|d| d.is_one()).count();
    Ok(H4Presentation { invariant_factors: diagonal[offset..].to_vec(), basis_change: (u, v), u_inv, offset })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct QT {
    pub q: QmodZ,
    pub t: QmodZ,
}

/// `q(x) = (x + p) . lambda^{-1} x / 2` and `t(x) = (x + p) . lambda^{-1} x / 24`.
pub fn q_t_from_coboundary(cb: &CoboundaryData, x: &[i64]) -> Result<QT> {
    cb.check_len(x)?;
    let s = cb.pairing(x, x) + cb.pairing(&cb.p, x);
    Ok(QT { q: qz_normalize(&(&s / int(2))), t: qz_normalize(&(s / int(24))) })
}

/// Linking form `b(x, y) = x . lambda^{-1} y` mod 1.
pub fn linking(cb: &CoboundaryData, x: &[i64], y: &[i64]) -> Result<QmodZ> {
    cb.check_len(x)?;
    cb.check_len(y)?;
    Ok(qz_normalize(&cb.pairing(x, y)))
}

pub fn coboundary_signature(cb: &CoboundaryData) -> i64 {
    signature(&cb.big_lambda()).expect("nonsingular by construction")
}

/// `(sigma(W) - p . lambda^{-1} p) / 224` mod 1.
pub fn mu_hat(cb: &CoboundaryData) -> QmodZ {
    let defect = int(coboundary_signature(cb)) - cb.pairing(&cb.p, &cb.p);
    qz_normalize(&(defect / int(224)))
}
