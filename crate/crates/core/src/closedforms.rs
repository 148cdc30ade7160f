//! Closed-form t-invariants and related secondary invariants.

use num_bigint::BigInt;
use num_traits::One;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::exact::{a_const, factorial, falling_square_product, int, qz_normalize, QmodZ, Rational};

fn big_rat(num: BigInt, den: BigInt) -> Rational {
    Rational::new(num, den)
}

/// `a_j / (2j)! * prod_{i<j} (c - i^2)` as an exact rational.
fn fg_quantity(c: i64, j: i64) -> Rational {
    let num = falling_square_product(&BigInt::from(c), j) * BigInt::from(a_const(j).unwrap_or(1));
    big_rat(num, factorial(2 * j as u64))
}

/// t-invariant of `p_k^* E_c` on `S^(4k-1)`: `a_k/(2k)! prod_{j<k} (c - j^2)`.
pub fn t_pullback_closed(c: i64, k: i64) -> Result<QmodZ> {
    if k < 2 {
        return Err(Error::InvalidInput(format!("k must be at least 2, got {k}")));
    }
    Ok(qz_normalize(&fg_quantity(c, k)))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "status", rename_all = "snake_case")]
pub enum FgVerdict {
    Admissible,
    Fails { failing_j: i64 },
}

impl FgVerdict {
    pub fn is_admissible(&self) -> bool {
        matches!(self, FgVerdict::Admissible)
    }

    pub fn failing_j(&self) -> Option<i64> {
        match self {
            FgVerdict::Admissible => None,
            FgVerdict::Fails { failing_j } => Some(*failing_j),
        }
    }
}

/// Feder-Gitler integrality test for `c` on `HP^k`: every
/// `a_j/(2j)! prod_{i<j} (c - i^2)` with `2 <= j <= k` must be an integer.
pub fn fg_admissible(c: i64, k: i64) -> Result<FgVerdict> {
    if k < 2 {
        return Err(Error::InvalidInput(format!("k must be at least 2, got {k}")));
    }
    Ok((2..=k)
        .find(|&j| !fg_quantity(c, j).is_integer())
        .map_or(FgVerdict::Admissible, |failing_j| FgVerdict::Fails { failing_j }))
}

/// Total space `M_{n,p}` of the 3-sphere bundle over `S^4` with Euler number
/// `n` whose disc bundle has spin class `p_W = p`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct SphereBundle7 {
    n: i64,
    p: i64,
}

impl SphereBundle7 {
    pub fn new(n: i64, p: i64) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidInput("Euler number n must be nonzero".into()));
        }
        if (n - p).rem_euclid(2) != 0 {
            return Err(Error::Parity(format!("p = {p} and n = {n} must have the same parity")));
        }
        Ok(SphereBundle7 { n, p })
    }

    pub fn n(&self) -> i64 {
        self.n
    }

    pub fn p(&self) -> i64 {
        self.p
    }

    /// Order of `H^4(M) = Z/|n|`.
    pub fn order(&self) -> u64 {
        self.n.unsigned_abs()
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SphereBundleInvariants {
    pub t: QmodZ,
    pub q: QmodZ,
    pub b_kk: QmodZ,
    pub mu: QmodZ,
}

/// Invariants of the bundle with `c2 = k` (a lift of `[k]` in `Z/n`).
pub fn sphere_bundle_invariants(m: &SphereBundle7, k: i64) -> SphereBundleInvariants {
    let (n, p) = (BigInt::from(m.n), BigInt::from(m.p));
    let k = BigInt::from(k);
    let kpk = &k * (&p + &k);
    SphereBundleInvariants {
        t: qz_normalize(&big_rat(kpk.clone(), BigInt::from(24) * &n)),
        q: qz_normalize(&big_rat(kpk, BigInt::from(2) * &n)),
        b_kk: qz_normalize(&big_rat(&k * &k, n.clone())),
        mu: sphere_bundle_mu(m),
    }
}

/// `(sign(n) - p^2/n) / 224`, the A-hat defect of the rank-one disc bundle.
pub fn sphere_bundle_mu(m: &SphereBundle7) -> QmodZ {
    let defect = int(m.n.signum()) - big_rat(BigInt::from(m.p) * m.p, BigInt::from(m.n));
    qz_normalize(&(defect / int(224)))
}

/// `mu(P_n)` from `P_n = M_{n,n} # Sigma^((n - n^3)/6)` with `mu(Sigma) = 1/28`.
pub fn p_family_mu(n: i64) -> Result<QmodZ> {
    let m = SphereBundle7::new(n, n)?;
    if n < 1 {
        return Err(Error::InvalidInput(format!("P_n needs n >= 1, got {n}")));
    }
    let n = BigInt::from(n);
    let power = (&n - &n * &n * &n) / 6;
    Ok(&sphere_bundle_mu(&m) + &qz_normalize(&big_rat(power, BigInt::from(28))))
}

/// Which Seifert fibration `pi_i` of a GWZ manifold the bundle is pulled back along.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum Fibration {
    #[default]
    Pi1,
    Pi2,
}

/// Grove-Wilking-Ziller manifold `M_{(p-,q-),(p+,q+)}`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct GwzManifold {
    pub p_minus: i64,
    pub q_minus: i64,
    pub p_plus: i64,
    pub q_plus: i64,
}

impl GwzManifold {
    pub fn new(p_minus: i64, q_minus: i64, p_plus: i64, q_plus: i64) -> Result<Self> {
        for (name, v) in [("p-", p_minus), ("q-", q_minus), ("p+", p_plus), ("q+", q_plus)] {
            if v <= 0 || v % 2 == 0 {
                return Err(Error::InvalidInput(format!("{name} = {v} must be a positive odd integer")));
            }
        }
        for (a, b) in [(p_minus, q_minus), (p_plus, q_plus)] {
            if num_integer::gcd(a, b) != 1 {
                return Err(Error::InvalidInput(format!("({a}, {b}) is not a coprime pair")));
            }
        }
        let m = GwzManifold { p_minus, q_minus, p_plus, q_plus };
        if m.order_big() == BigInt::from(0) {
            return Err(Error::InvalidInput("H^4(M) is infinite: p-^2 q+^2 = p+^2 q-^2".into()));
        }
        Ok(m)
    }

    /// `P_n = M_{(1,1),(2n-1,2n+1)}`.
    pub fn p_family(n: i64) -> Result<Self> {
        if n < 1 {
            return Err(Error::InvalidInput(format!("P_n needs n >= 1, got {n}")));
        }
        Self::new(1, 1, 2 * n - 1, 2 * n + 1)
    }

    fn order_big(&self) -> BigInt {
        let sq = |x: i64| BigInt::from(x) * x;
        let d = sq(self.p_minus) * sq(self.q_plus) - sq(self.p_plus) * sq(self.q_minus);
        // Odd squares are 1 mod 8, so the difference is divisible by 8.
        num_traits::Signed::abs(&d) / 8
    }

    /// `n = |p-^2 q+^2 - p+^2 q-^2| / 8`, the order of `H^4(M)`.
    pub fn order(&self) -> BigInt {
        self.order_big()
    }
}

/// `k (p+^2 - p-^2 - n + k p-^2 p+^2) / (24 n)`; the `Pi2` variant swaps the
/// roles of `p` and `q`.
pub fn t_gwz(m: &GwzManifold, k: i64, fibration: Fibration) -> QmodZ {
    let (minus, plus) = match fibration {
        Fibration::Pi1 => (m.p_minus, m.p_plus),
        Fibration::Pi2 => (m.q_minus, m.q_plus),
    };
    let n = m.order();
    let sq = |x: i64| BigInt::from(x) * x;
    let k = BigInt::from(k);
    let inner = sq(plus) - sq(minus) - &n + &k * sq(minus) * sq(plus);
    qz_normalize(&big_rat(k * inner, BigInt::from(24) * n))
}

/// `t_{P_n}(pi_1^* E) = k(k - n) / (24 n)`.
pub fn t_pn(n: i64, k: i64) -> Result<QmodZ> {
    if n < 1 {
        return Err(Error::InvalidInput(format!("P_n needs n >= 1, got {n}")));
    }
    let (n, k) = (BigInt::from(n), BigInt::from(k));
    Ok(qz_normalize(&big_rat(&k * (&k - &n), BigInt::from(24) * n)))
}

/// Difference `t_gwz(P_n, k) - t_pn(n, k)` between the general GWZ formula
/// specialised to `P_n` and the closed `P_n` formula.
pub fn gwz_pn_discrepancy(n: i64, k: i64) -> Result<QmodZ> {
    let m = GwzManifold::p_family(n)?;
    Ok(t_gwz(&m, k, Fibration::Pi1) - t_pn(n, k)?)
}

/// t-invariant on `S^7` through the stabilised e-invariant residue `ebar`
/// in `Z/24`: `ebar (ebar - 1) / 24`.
pub fn t_s7_from_ebar(ebar: i64) -> QmodZ {
    let e = BigInt::from(ebar);
    qz_normalize(&big_rat(&e * (&e - BigInt::one()), BigInt::from(24)))
}

/// t-invariant of `L (+) L*` from the invariant `s` of `L`: `a_k * s`.
pub fn s_relation(s_value: &QmodZ, k: i64) -> Result<QmodZ> {
    if k < 2 {
        return Err(Error::InvalidInput(format!("k must be at least 2, got {k}")));
    }
    Ok(s_value * a_const(k)?)
}
