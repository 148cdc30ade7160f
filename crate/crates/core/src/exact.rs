//! Exact rationals and their residues modulo the integers.
//!
//! Every invariant in this crate takes values in Q/Z. A [`QmodZ`] stores the
//! unique representative in `[0, 1)`, so equality of residues is plain
//! structural equality of reduced fractions.

use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

/// Arbitrary-precision rational, always kept in lowest terms with a positive
/// denominator.
pub type Rational = num_rational::BigRational;

pub fn rat(num: i64, den: i64) -> Rational {
    Rational::new(BigInt::from(num), BigInt::from(den))
}

pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// `num/den`, or just `num` when the denominator is one.
pub fn format_rational(r: &Rational) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

pub fn parse_rational(s: &str) -> Result<Rational> {
    let s = s.trim();
    let bad = || Error::Parse(format!("not a rational: `{s}`"));
    match s.split_once('/') {
        None => Ok(Rational::from_integer(s.parse::<BigInt>().map_err(|_| bad())?)),
        Some((n, d)) => {
            let n = n.trim().parse::<BigInt>().map_err(|_| bad())?;
            let d = d.trim().parse::<BigInt>().map_err(|_| bad())?;
            if d.is_zero() {
                return Err(Error::Parse(format!("zero denominator in `{s}`")));
            }
            Ok(Rational::new(n, d))
        }
    }
}

/// The constant `a_j`: 1 for even `j`, 2 for odd `j`.
pub fn a_const(j: i64) -> Result<i64> {
    if j < 0 {
        return Err(Error::InvalidInput(format!("a_j needs j >= 0, got {j}")));
    }
    Ok(if j % 2 == 0 { 1 } else { 2 })
}

/// Residue of a rational number modulo 1.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct QmodZ(Rational);

pub fn qz_normalize(r: &Rational) -> QmodZ {
    QmodZ(r - r.floor())
}

impl QmodZ {
    pub fn zero() -> Self {
        QmodZ(Rational::zero())
    }

    pub fn new(num: i64, den: i64) -> Self {
        qz_normalize(&rat(num, den))
    }

    /// Representative in `[0, 1)`.
    pub fn rep(&self) -> &Rational {
        &self.0
    }

    pub fn into_rep(self) -> Rational {
        self.0
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    pub fn numer(&self) -> &BigInt {
        self.0.numer()
    }

    pub fn denom(&self) -> &BigInt {
        self.0.denom()
    }

    /// Additive order of the residue, i.e. its reduced denominator.
    pub fn order(&self) -> BigInt {
        self.0.denom().clone()
    }

    /// True if the residue lies in `(1/m)Z/Z`.
    pub fn in_subgroup(&self, m: u64) -> bool {
        (BigInt::from(m) % self.0.denom()).is_zero()
    }

    /// Whether `self` generates `(1/m)Z/Z`.
    pub fn generates(&self, m: u64) -> bool {
        *self.0.denom() == BigInt::from(m)
    }

    pub fn scale(&self, k: &BigInt) -> QmodZ {
        qz_normalize(&(&self.0 * Rational::from_integer(k.clone())))
    }
}

impl fmt::Display for QmodZ {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&format_rational(&self.0))
    }
}

impl fmt::Debug for QmodZ {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "QmodZ({self})")
    }
}

impl FromStr for QmodZ {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        parse_rational(s).map(|r| qz_normalize(&r))
    }
}

impl From<Rational> for QmodZ {
    fn from(r: Rational) -> Self {
        qz_normalize(&r)
    }
}

impl From<&Rational> for QmodZ {
    fn from(r: &Rational) -> Self {
        qz_normalize(r)
    }
}

impl Add for &QmodZ {
    type Output = QmodZ;
    fn add(self, rhs: &QmodZ) -> QmodZ {
        let s = &self.0 + &rhs.0;
        if s >= Rational::one() {
            QmodZ(s - Rational::one())
        } else {
            QmodZ(s)
        }
    }
}

impl Add for QmodZ {
    type Output = QmodZ;
    fn add(self, rhs: QmodZ) -> QmodZ {
        &self + &rhs
    }
}

impl AddAssign<&QmodZ> for QmodZ {
    fn add_assign(&mut self, rhs: &QmodZ) {
        *self = &*self + rhs;
    }
}

impl Neg for &QmodZ {
    type Output = QmodZ;
    fn neg(self) -> QmodZ {
        if self.0.is_zero() {
            QmodZ::zero()
        } else {
            QmodZ(Rational::one() - &self.0)
        }
    }
}

impl Neg for QmodZ {
    type Output = QmodZ;
    fn neg(self) -> QmodZ {
        -&self
    }
}

impl Sub for &QmodZ {
    type Output = QmodZ;
    fn sub(self, rhs: &QmodZ) -> QmodZ {
        self + &(-rhs)
    }
}

impl Sub for QmodZ {
    type Output = QmodZ;
    fn sub(self, rhs: QmodZ) -> QmodZ {
        &self - &rhs
    }
}

impl Mul<i64> for &QmodZ {
    type Output = QmodZ;
    fn mul(self, k: i64) -> QmodZ {
        self.scale(&BigInt::from(k))
    }
}

impl Mul<i64> for QmodZ {
    type Output = QmodZ;
    fn mul(self, k: i64) -> QmodZ {
        &self * k
    }
}

impl std::iter::Sum for QmodZ {
    fn sum<I: Iterator<Item = QmodZ>>(iter: I) -> QmodZ {
        iter.fold(QmodZ::zero(), |acc, x| acc + x)
    }
}

impl Serialize for QmodZ {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for QmodZ {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// Product of `c - j^2` for `j = 0..k`, a polynomial value that appears in
/// every Feder-Gitler style formula.
pub(crate) fn falling_square_product(c: &BigInt, k: i64) -> BigInt {
    (0..k).fold(BigInt::one(), |acc, j| acc * (c - BigInt::from(j * j)))
}

pub(crate) fn factorial(n: u64) -> BigInt {
    (1..=n).fold(BigInt::one(), |acc, i| acc * BigInt::from(i))
}
