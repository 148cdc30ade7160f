//! Truncated power series in one variable over the rationals.
//!
//! Series that the topology writes in `sqrt(a)` are all even in `sqrt(a)`, so
//! they are stored directly as series in `a`.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::exact::{factorial, format_rational, int, Rational};
use crate::poly::Poly;

/// Power series known through degree `order`; nothing beyond it is ever read.
#[derive(Clone, PartialEq, Eq)]
pub struct TruncatedSeries {
    coeffs: Vec<Rational>,
}

impl TruncatedSeries {
    /// Builds a series of the given order, padding or truncating `coeffs`.
    pub fn new(mut coeffs: Vec<Rational>, order: usize) -> Self {
        coeffs.resize(order + 1, Rational::zero());
        TruncatedSeries { coeffs }
    }

    pub fn from_fn(order: usize, f: impl FnMut(usize) -> Rational) -> Self {
        TruncatedSeries { coeffs: (0..=order).map(f).collect() }
    }

    pub fn zero(order: usize) -> Self {
        Self::new(Vec::new(), order)
    }

    pub fn one(order: usize) -> Self {
        Self::constant(int(1), order)
    }

    pub fn constant(c: Rational, order: usize) -> Self {
        Self::new(vec![c], order)
    }

    /// The series variable itself.
    pub fn var(order: usize) -> Self {
        Self::new(vec![int(0), int(1)], order)
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> &Rational {
        &self.coeffs[i]
    }

    pub fn with_order(&self, order: usize) -> Self {
        Self::new(self.coeffs.clone(), order)
    }

    pub fn scale(&self, s: &Rational) -> Self {
        TruncatedSeries { coeffs: self.coeffs.iter().map(|c| c * s).collect() }
    }

    pub fn pow(&self, mut e: u32) -> Self {
        let mut base = self.clone();
        let mut acc = Self::one(self.order());
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// Substitutes `s * x` for the variable.
    pub fn rescale_var(&self, s: &Rational) -> Self {
        let mut p = Rational::one();
        let coeffs = self
            .coeffs
            .iter()
            .map(|c| {
                let out = c * &p;
                p *= s;
                out
            })
            .collect();
        TruncatedSeries { coeffs }
    }

    /// Divides by the variable, dropping the constant term; the order drops by one.
    pub fn shift_down(&self) -> Self {
        TruncatedSeries {
            coeffs: if self.coeffs.len() > 1 { self.coeffs[1..].to_vec() } else { vec![Rational::zero()] },
        }
    }

    pub fn invert(&self) -> Result<Self> {
        series_invert(self)
    }

    pub fn compose(&self, inner: &Self) -> Result<Self> {
        series_compose(self, inner)
    }
}

/// Multiplicative inverse up to the series' order.
pub fn series_invert(s: &TruncatedSeries) -> Result<TruncatedSeries> {
    let s0 = &s.coeffs[0];
    if s0.is_zero() {
        return Err(Error::NotInvertible);
    }
    let inv0 = s0.recip();
    let mut u: Vec<Rational> = Vec::with_capacity(s.coeffs.len());
    u.push(inv0.clone());
    for n in 1..s.coeffs.len() {
        let acc = (1..=n).fold(Rational::zero(), |acc, i| acc + &s.coeffs[i] * &u[n - i]);
        u.push(-acc * &inv0);
    }
    Ok(TruncatedSeries { coeffs: u })
}

/// `outer(inner(x))`, truncated at the smaller of the two orders.
pub fn series_compose(outer: &TruncatedSeries, inner: &TruncatedSeries) -> Result<TruncatedSeries> {
    if !inner.coeffs[0].is_zero() {
        return Err(Error::NonzeroConstantTerm);
    }
    let order = outer.order().min(inner.order());
    let inner = inner.with_order(order);
    let mut acc = TruncatedSeries::zero(order);
    for c in outer.coeffs[..=order].iter().rev() {
        acc = &acc * &inner;
        acc.coeffs[0] += c;
    }
    Ok(acc)
}

impl Add for &TruncatedSeries {
    type Output = TruncatedSeries;
    fn add(self, rhs: &TruncatedSeries) -> TruncatedSeries {
        let order = self.order().min(rhs.order());
        TruncatedSeries::from_fn(order, |i| &self.coeffs[i] + &rhs.coeffs[i])
    }
}

impl Sub for &TruncatedSeries {
    type Output = TruncatedSeries;
    fn sub(self, rhs: &TruncatedSeries) -> TruncatedSeries {
        let order = self.order().min(rhs.order());
        TruncatedSeries::from_fn(order, |i| &self.coeffs[i] - &rhs.coeffs[i])
    }
}

impl Neg for &TruncatedSeries {
    type Output = TruncatedSeries;
    fn neg(self) -> TruncatedSeries {
        TruncatedSeries { coeffs: self.coeffs.iter().map(|c| -c).collect() }
    }
}

impl Mul for &TruncatedSeries {
    type Output = TruncatedSeries;
    fn mul(self, rhs: &TruncatedSeries) -> TruncatedSeries {
        let order = self.order().min(rhs.order());
        let mut out = vec![Rational::zero(); order + 1];
        for (i, a) in self.coeffs[..=order].iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs[..=order - i].iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        TruncatedSeries { coeffs: out }
    }
}

impl fmt::Display for TruncatedSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if !first {
                f.write_str(" + ")?;
            }
            first = false;
            match i {
                0 => write!(f, "{}", format_rational(c))?,
                1 => write!(f, "({})a", format_rational(c))?,
                _ => write!(f, "({})a^{i}", format_rational(c))?,
            }
        }
        if first {
            f.write_str("0")?;
        }
        write!(f, " + O(a^{})", self.order() + 1)
    }
}

impl fmt::Debug for TruncatedSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

/// The generating series used by the characteristic-class computations.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum NamedSeries {
    /// `sinh(sqrt(a)/2) / (sqrt(a)/2) = sum (a/4)^m / (2m+1)!`
    SinhHalfRatio,
    /// `cosh(sqrt(a)/2) = sum (a/4)^m / (2m)!`
    CoshHalf,
    /// `cosh(sqrt(c a)) = sum (c a)^m / (2m)!`
    CoshSqrtC { c: Rational },
    /// `arsinh(z)`, odd.
    Arsinh,
    /// `cosh(2y arsinh(z/2))` with `y^2 = c` substituted; even in `z`.
    Cosh2yArsinh { c: Rational },
}

impl FromStr for NamedSeries {
    type Err = Error;

    /// Accepts `sinh_half_ratio`, `cosh_half`, `arsinh`, `cosh_sqrt_c:<c>` and
    /// `cosh_2y_arsinh:<c>`.
    fn from_str(s: &str) -> Result<Self> {
        let (name, param) = match s.split_once(':') {
            Some((n, p)) => (n, Some(p)),
            None => (s, None),
        };
        let need = |p: Option<&str>| {
            p.ok_or_else(|| Error::InvalidInput(format!("series `{name}` needs a parameter c")))
                .and_then(crate::exact::parse_rational)
        };
        match name {
            "sinh_half_ratio" => Ok(NamedSeries::SinhHalfRatio),
            "cosh_half" => Ok(NamedSeries::CoshHalf),
            "arsinh" => Ok(NamedSeries::Arsinh),
            "cosh_sqrt_c" => Ok(NamedSeries::CoshSqrtC { c: need(param)? }),
            "cosh_2y_arsinh" => Ok(NamedSeries::Cosh2yArsinh { c: need(param)? }),
            other => Err(Error::UnknownSeries(other.to_string())),
        }
    }
}

fn inv_factorial(n: usize) -> Rational {
    Rational::new(BigInt::one(), factorial(n as u64))
}

/// Coefficient of `z^(2m+1)` in `arsinh(z)`: `(-1)^m (2m)! / (4^m (m!)^2 (2m+1))`.
fn arsinh_coeff(m: usize) -> Rational {
    let num = factorial(2 * m as u64);
    let mf = factorial(m as u64);
    let den = BigInt::from(4).pow(m as u32) * &mf * &mf * BigInt::from(2 * m + 1);
    let r = Rational::new(num, den);
    if m % 2 == 1 {
        -r
    } else {
        r
    }
}

pub fn named_series(name: &NamedSeries, order: usize) -> TruncatedSeries {
    match name {
        NamedSeries::SinhHalfRatio => {
            TruncatedSeries::from_fn(order, |m| inv_factorial(2 * m + 1) / int(4).pow(m as i32))
        }
        NamedSeries::CoshHalf => TruncatedSeries::from_fn(order, |m| inv_factorial(2 * m) / int(4).pow(m as i32)),
        NamedSeries::CoshSqrtC { c } => TruncatedSeries::from_fn(order, |m| inv_factorial(2 * m) * c.pow(m as i32)),
        NamedSeries::Arsinh => {
            TruncatedSeries::from_fn(order, |i| if i % 2 == 1 { arsinh_coeff(i / 2) } else { Rational::zero() })
        }
        NamedSeries::Cosh2yArsinh { c } => {
            // cosh(2y w) = sum_m (4c)^m w^(2m) / (2m)!, composed with w = arsinh(z/2).
            let w =
                named_series(&NamedSeries::Arsinh, order).rescale_var(&Rational::new(BigInt::one(), BigInt::from(2)));
            let w2 = &w * &w;
            let outer = named_series(&NamedSeries::CoshSqrtC { c: c * int(4) }, order);
            series_compose(&outer, &w2).expect("arsinh(z/2)^2 has no constant term")
        }
    }
}

/// `cosh(2y arsinh(z/2))` with `c = y^2` kept symbolic: entry `i` is the
/// coefficient of `z^i` as a polynomial in `c`.
pub fn cosh_2y_arsinh_symbolic(order: usize) -> Vec<Poly> {
    let w = named_series(&NamedSeries::Arsinh, order).rescale_var(&Rational::new(BigInt::one(), BigInt::from(2)));
    let w2 = &w * &w;
    let mut out = vec![Poly::zero(); order + 1];
    let mut power = TruncatedSeries::one(order);
    // w^2 starts in degree 2, so powers beyond order/2 contribute nothing.
    for m in 0..=order / 2 {
        let scale = inv_factorial(2 * m) * int(4).pow(m as i32);
        for (i, coeff) in power.coeffs().iter().enumerate() {
            if !coeff.is_zero() {
                out[i] = &out[i] + &Poly::monomial(coeff * &scale, m);
            }
        }
        power = &power * &w2;
    }
    out
}
