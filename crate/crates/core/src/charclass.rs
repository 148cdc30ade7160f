//! Characteristic-class series of quaternionic projective space and the
//! pairing that evaluates the t-invariant on the disc bundle over it.
//!
//! Everything here is computed from power series alone and serves as the
//! independent check on the closed forms in [`crate::closedforms`].

use num_bigint::BigInt;
use num_traits::Zero;

use crate::error::{Error, Result};
use crate::exact::{a_const, int, qz_normalize, QmodZ, Rational};
use crate::poly::Poly;
use crate::series::{cosh_2y_arsinh_symbolic, named_series, NamedSeries, TruncatedSeries};

/// `A-hat(T HP^k)` as a series in the generator `a = -c2(H)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AhatSeries {
    pub k: usize,
    pub series: TruncatedSeries,
}

/// `(sqrt(a)/2 / sinh(sqrt(a)/2))^(2k+1) * cosh(sqrt(a)/2)` to degree `k`.
///
/// Comes from `T HP^k (+) End_H(H) = H^(k+1)` with `p(H_R) = (1+a)^2` and
/// `p_1(End_H(H)) = 4a`.
pub fn ahat_hpk(k: usize) -> AhatSeries {
    let ratio = named_series(&NamedSeries::SinhHalfRatio, k).invert().expect("sinh ratio starts with 1");
    let series = &ratio.pow(2 * k as u32 + 1) * &named_series(&NamedSeries::CoshHalf, k);
    AhatSeries { k, series }
}

/// `2 - ch(E_c) = -2 sum_{m>=1} (c a)^m / (2m)!`, using `c2(E_c) = -c a`.
pub fn two_minus_ch(c: i64, order: usize) -> TruncatedSeries {
    let cosh = named_series(&NamedSeries::CoshSqrtC { c: int(c) }, order);
    &TruncatedSeries::constant(int(2), order) - &cosh.scale(&int(2))
}

fn check_k(k: i64) -> Result<usize> {
    if k < 2 {
        return Err(Error::InvalidInput(format!("k must be at least 2, got {k}")));
    }
    Ok(k as usize)
}

/// The t-invariant of `p_k^* E_c` on `S^(4k-1)`, read off as the coefficient
/// of `a^k` in `A-hat(TW) (2 - ch(E_c))` on the disc bundle `W_k`.
pub fn t_pullback_series(c: i64, k: i64) -> Result<QmodZ> {
    let k = check_k(k)?;
    let integrand = &ahat_hpk(k).series * &two_minus_ch(c, k);
    let a_next = a_const(k as i64 + 1)?;
    Ok(qz_normalize(&(-integrand.coeff(k) / int(a_next))))
}

/// Coefficient of `z^(2k)` in `cosh(2y arsinh(z/2))` as a polynomial in `c = y^2`.
pub fn tbar_poly(k: usize) -> Poly {
    cosh_2y_arsinh_symbolic(2 * k).swap_remove(2 * k)
}

/// `a_k * tbar_k(c)` reduced mod 1, the residue form of the same invariant.
pub fn t_pullback_tbar(c: i64, k: i64) -> Result<QmodZ> {
    let k = check_k(k)?;
    let value = tbar_poly(k).eval(&int(c)) * int(a_const(k as i64)?);
    Ok(qz_normalize(&value))
}

/// `p_{n,0}, ..., p_{n,n}` with `cosh(2nx) = sum_m p_{n,m} sinh(x)^(2m)`.
///
/// Solved by matching even coefficients in `x`; the system is unitriangular
/// since `sinh(x)^(2m)` starts with `x^(2m)`.
pub fn cosh_poly_coeffs(n: usize) -> Vec<BigInt> {
    let order = 2 * n;
    let cosh_2nx = named_series(&NamedSeries::CoshSqrtC { c: int(4 * (n * n) as i64) }, n);
    // cosh(2nx) as a series in x: only even powers.
    let target: Vec<Rational> =
        (0..=order).map(|i| if i % 2 == 0 { cosh_2nx.coeff(i / 2).clone() } else { Rational::zero() }).collect();
    let sinh = TruncatedSeries::from_fn(order, |i| {
        if i % 2 == 1 {
            Rational::new(1.into(), crate::exact::factorial(i as u64))
        } else {
            Rational::zero()
        }
    });
    let sinh2 = &sinh * &sinh;
    let mut powers = Vec::with_capacity(n + 1);
    let mut p = TruncatedSeries::one(order);
    for _ in 0..=n {
        powers.push(p.clone());
        p = &p * &sinh2;
    }
    let mut sol: Vec<Rational> = Vec::with_capacity(n + 1);
    for j in 0..=n {
        let known = (0..j).fold(Rational::zero(), |acc, m| acc + &sol[m] * powers[m].coeff(2 * j));
        sol.push(&target[2 * j] - known);
    }
    sol.into_iter()
        .map(|r| {
            assert!(r.is_integer(), "cosh polynomial coefficient {r} is not integral");
            r.to_integer()
        })
        .collect()
}
