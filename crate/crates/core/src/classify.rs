//! Quadratic linking functions on `H^4(M)` and the decision procedures for
//! diffeomorphism and almost-diffeomorphism of 2-connected rational homology
//! 7-spheres, plus the bundle set `Bun(M) = H^4(M) x Z/12`.

use num_bigint::BigInt;
use serde::Serialize;

use crate::coboundary::{q_t_from_coboundary, snf_cokernel, CoboundaryData};
use crate::error::{Error, Result};
use crate::exact::{int, qz_normalize, QmodZ};
use crate::group::{aut_enumerate, Automorphism, Element, FiniteAbelian, DEFAULT_ORDER_BOUND};

/// A quadratic refinement `q: G -> Q/Z` of a nondegenerate linking form.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QuadraticLinkingFunction {
    group: FiniteAbelian,
    values: Vec<QmodZ>,
    /// `b(g_i, g_j)` on the standard generators.
    gram: Vec<Vec<QmodZ>>,
    /// The element with `q(x) - q(-x) = b(kappa, x)`.
    kappa: Element,
}

impl QuadraticLinkingFunction {
    /// Validates a value table indexed like `group.elements()`.
    pub fn new(group: FiniteAbelian, values: Vec<QmodZ>) -> Result<Self> {
        let bad = |msg: String| Err(Error::InvariantViolation(msg));
        if values.len() as u64 != group.order() {
            return bad(format!("{} values for a group of order {}", values.len(), group.order()));
        }
        if !values[0].is_zero() {
            return bad(format!("q(0) = {} is not zero", values[0]));
        }
        let r = group.rank();
        let q = |x: &[u64]| &values[group.index(x)];
        let gens: Vec<Element> = (0..r).map(|i| group.generator(i)).collect();
        let gram: Vec<Vec<QmodZ>> = (0..r)
            .map(|i| (0..r).map(|j| &(q(&group.add(&gens[i], &gens[j])) - q(&gens[i])) - q(&gens[j])).collect())
            .collect();
        for i in 0..r {
            for j in 0..r {
                if !(&gram[i][j] * group.factors()[i] as i64).is_zero() {
                    return bad(format!("b(g{i}, g{j}) = {} is not killed by {}", gram[i][j], group.factors()[i]));
                }
            }
        }
        // Along each cyclic factor, q(m+1) - q(m) - q(1) must equal m b(g, g).
        for (i, g) in gens.iter().enumerate() {
            let d = group.factors()[i] as i64;
            for m in 0..d {
                let x = group.scale(m, g);
                let lhs = &(q(&group.add(&x, g)) - q(&x)) - q(g);
                if lhs != &gram[i][i] * m {
                    return bad(format!("q is not quadratic along generator {i} at multiple {m}"));
                }
            }
        }
        // q(x) = sum_i q(x_i g_i) + sum_{i<j} x_i x_j b(g_i, g_j).
        for (idx, x) in group.elements().enumerate() {
            let mut expect = QmodZ::zero();
            for i in 0..r {
                expect += q(&group.scale(x[i] as i64, &gens[i]));
                for j in i + 1..r {
                    expect += &(&gram[i][j] * (x[i] * x[j]) as i64);
                }
            }
            if expect != values[idx] {
                return bad(format!("polarization of q is not bilinear at {x:?}"));
            }
        }
        let pairing_row =
            |x: &[u64]| -> Vec<QmodZ> { (0..r).map(|j| (0..r).map(|i| &gram[i][j] * x[i] as i64).sum()).collect() };
        let zero_row = vec![QmodZ::zero(); r];
        if let Some(x) = group.elements().skip(1).find(|x| pairing_row(x) == zero_row) {
            return bad(format!("linking form is degenerate: {x:?} pairs trivially"));
        }
        // q(x) - q(-x) is a homomorphism; find kappa representing it.
        let defect: Vec<QmodZ> = gens.iter().map(|g| q(g) - q(&group.neg(g))).collect();
        let kappa = group
            .elements()
            .find(|x| pairing_row(x) == defect)
            .expect("a nondegenerate form represents every character");
        Ok(QuadraticLinkingFunction { group, values, gram, kappa })
    }

    /// Builds `q` on `Z/n` from a function of integer lifts.
    pub fn cyclic_from_fn(n: u64, f: impl Fn(i64) -> QmodZ) -> Result<Self> {
        let group = FiniteAbelian::cyclic(n)?;
        let values = (0..n as i64).map(f).collect();
        Self::new(group, values)
    }

    pub fn group(&self) -> &FiniteAbelian {
        &self.group
    }

    pub fn values(&self) -> &[QmodZ] {
        &self.values
    }

    pub fn value(&self, x: &[u64]) -> &QmodZ {
        &self.values[self.group.index(x)]
    }

    pub fn kappa(&self) -> &[u64] {
        &self.kappa
    }

    /// `b(x, y) = q(x + y) - q(x) - q(y)`.
    pub fn linking(&self, x: &[u64], y: &[u64]) -> QmodZ {
        &(self.value(&self.group.add(x, y)) - self.value(x)) - self.value(y)
    }

    pub fn gram(&self) -> &[Vec<QmodZ>] {
        &self.gram
    }

    /// True if `self(x) = other(a(x))` for every `x`.
    pub fn pulls_back_via(&self, other: &QuadraticLinkingFunction, a: &Automorphism) -> bool {
        self.group == other.group
            && self.group.elements().enumerate().all(|(i, x)| self.values[i] == *other.value(&a.apply(&self.group, &x)))
    }
}

/// Tabulates `q_M` on `coker(lambda)` using canonical lifts.
pub fn qlf_from_coboundary(cb: &CoboundaryData) -> Result<QuadraticLinkingFunction> {
    qlf_from_coboundary_bounded(cb, DEFAULT_ORDER_BOUND)
}

pub fn qlf_from_coboundary_bounded(cb: &CoboundaryData, bound: u64) -> Result<QuadraticLinkingFunction> {
    let h = snf_cokernel(cb)?;
    let order = h.order();
    let too_large = || Error::GroupTooLarge { order: u64::try_from(&order).unwrap_or(u64::MAX), bound };
    let factors =
        h.invariant_factors.iter().map(|d| u64::try_from(d).map_err(|_| too_large())).collect::<Result<Vec<u64>>>()?;
    let group = FiniteAbelian::with_bound(factors, bound)?;
    let values = group
        .elements()
        .map(|x| {
            let coords: Vec<i64> = x.iter().map(|&c| c as i64).collect();
            let lift = lift_to_i64(&h.lift(&coords))?;
            Ok(q_t_from_coboundary(cb, &lift)?.q)
        })
        .collect::<Result<Vec<_>>>()?;
    QuadraticLinkingFunction::new(group, values)
}

fn lift_to_i64(v: &[BigInt]) -> Result<Vec<i64>> {
    v.iter().map(|x| i64::try_from(x).map_err(|_| Error::InvalidInput("cokernel lift overflows i64".into()))).collect()
}

/// First automorphism `A` in enumeration order with `q1 = q2 o A`.
pub fn iso_qlf(q1: &QuadraticLinkingFunction, q2: &QuadraticLinkingFunction) -> Option<Automorphism> {
    if q1.group != q2.group {
        return None;
    }
    let mut v1 = q1.values.clone();
    let mut v2 = q2.values.clone();
    v1.sort();
    v2.sort();
    if v1 != v2 {
        return None;
    }
    aut_enumerate(&q1.group).find(|a| q1.pulls_back_via(q2, a))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Verdict {
    Diffeomorphic,
    AlmostDiffeomorphicOnly,
    Distinct,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Classification {
    pub verdict: Verdict,
    pub witness: Option<Automorphism>,
    /// `mu(N) - mu(M)` when an isomorphism of linking functions exists.
    pub mu_difference: Option<QmodZ>,
    /// `m` with `N = M # Sigma^m`, `mu(Sigma) = 1/28`, when the difference lies in `(1/28)Z/Z`.
    pub exotic_sphere_power: Option<u32>,
}

pub fn classify_pair(
    q_m: &QuadraticLinkingFunction,
    q_n: &QuadraticLinkingFunction,
    mu_m: &QmodZ,
    mu_n: &QmodZ,
) -> Classification {
    let Some(witness) = iso_qlf(q_m, q_n) else {
        return Classification {
            verdict: Verdict::Distinct,
            witness: None,
            mu_difference: None,
            exotic_sphere_power: None,
        };
    };
    let diff = mu_n - mu_m;
    let power = diff.in_subgroup(28).then(|| {
        let scaled = diff.rep() * int(28);
        u32::try_from(scaled.to_integer()).expect("residue times 28 is below 28")
    });
    Classification {
        verdict: if diff.is_zero() { Verdict::Diffeomorphic } else { Verdict::AlmostDiffeomorphicOnly },
        witness: Some(witness),
        mu_difference: Some(diff),
        exotic_sphere_power: power,
    }
}

/// Classifies two coboundaries, taking mu from the A-hat defect unless given.
pub fn classify_coboundaries(
    m: &CoboundaryData,
    n: &CoboundaryData,
    mu_m: Option<QmodZ>,
    mu_n: Option<QmodZ>,
) -> Result<Classification> {
    let (q_m, q_n) = (qlf_from_coboundary(m)?, qlf_from_coboundary(n)?);
    let mu_m = mu_m.unwrap_or_else(|| crate::coboundary::mu_hat(m));
    let mu_n = mu_n.unwrap_or_else(|| crate::coboundary::mu_hat(n));
    Ok(classify_pair(&q_m, &q_n, &mu_m, &mu_n))
}

/// An element of `Bun(M)`, determined by its second Chern class and t-invariant.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct BundleClass {
    pub c2: Element,
    pub t: QmodZ,
}

/// All `12 |G|` classes `(c, t)` with `12 t = q(c)`.
pub fn bun_enumerate(qlf: &QuadraticLinkingFunction) -> Vec<BundleClass> {
    let twelfth = QmodZ::new(1, 12);
    qlf.group
        .elements()
        .zip(&qlf.values)
        .flat_map(|(c, q)| {
            let base = qz_normalize(&(q.rep() / int(12)));
            let twelfth = twelfth.clone();
            (0..12i64).map(move |s| BundleClass { c2: c.clone(), t: &base + &(&twelfth * s) })
        })
        .collect()
}

/// Same set as [`bun_enumerate`], but with base points taken from the
/// coboundary formula for `t` on canonical lifts.
pub fn bun_from_coboundary(cb: &CoboundaryData) -> Result<Vec<BundleClass>> {
    let h = snf_cokernel(cb)?;
    let qlf = qlf_from_coboundary(cb)?;
    let twelfth = QmodZ::new(1, 12);
    let mut out = Vec::with_capacity(12 * qlf.group.order() as usize);
    for c in qlf.group.elements() {
        let coords: Vec<i64> = c.iter().map(|&v| v as i64).collect();
        let base = q_t_from_coboundary(cb, &lift_to_i64(&h.lift(&coords))?)?.t;
        out.extend((0..12i64).map(|s| BundleClass { c2: c.clone(), t: &base + &(&twelfth * s) }));
    }
    Ok(out)
}

/// Automorphism of `H^4` together with the bijection of bundle sets it induces.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TIsomorphism {
    pub automorphism: Automorphism,
    pub bijection: Vec<(BundleClass, BundleClass)>,
}

/// A bijection `Bun(M) -> Bun(N)` compatible with `c2` and `t`, induced by an
/// isomorphism of quadratic linking functions.
pub fn t_iso(qlf_m: &QuadraticLinkingFunction, qlf_n: &QuadraticLinkingFunction) -> Option<TIsomorphism> {
    let a = iso_qlf(qlf_m, qlf_n)?;
    let g = &qlf_m.group;
    let bijection = bun_enumerate(qlf_m)
        .into_iter()
        .map(|class| {
            let image = BundleClass { c2: a.apply(g, &class.c2), t: class.t.clone() };
            debug_assert_eq!(&image.t * 12, *qlf_n.value(&image.c2));
            (class, image)
        })
        .collect();
    Some(TIsomorphism { automorphism: a, bijection })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::closedforms::t_pn;

    fn sphere_qlf(n: i64, p: i64) -> QuadraticLinkingFunction {
        qlf_from_coboundary(&CoboundaryData::rank_one(n, p).unwrap()).unwrap()
    }

    fn pn_qlf(n: i64) -> QuadraticLinkingFunction {
        QuadraticLinkingFunction::cyclic_from_fn(n as u64, |k| t_pn(n, k).unwrap() * 12).unwrap()
    }

    #[test]
    fn qlf_examples() {
        assert_eq!(sphere_qlf(2, 2).values(), &[QmodZ::zero(), QmodZ::new(3, 4)]);
        assert_eq!(sphere_qlf(1, 1).values(), &[QmodZ::zero()]);
        assert_eq!(sphere_qlf(3, 1).values(), &[QmodZ::zero(), QmodZ::new(1, 3), QmodZ::zero()]);
        assert_eq!(sphere_qlf(-3, 1).group().order(), 3);
        assert_eq!(sphere_qlf(5, 1).kappa(), &[1]);
    }

    #[test]
    fn rejects_non_quadratic_tables() {
        let g = FiniteAbelian::cyclic(3).unwrap();
        let err = QuadraticLinkingFunction::new(g.clone(), vec![QmodZ::new(1, 3), QmodZ::zero(), QmodZ::zero()]);
        assert!(matches!(err, Err(Error::InvariantViolation(_))));
        let err = QuadraticLinkingFunction::new(g.clone(), vec![QmodZ::zero(), QmodZ::new(1, 5), QmodZ::zero()]);
        assert!(err.is_err());
        // q = 0 on Z/3 is quadratic but its linking form is degenerate.
        let err = QuadraticLinkingFunction::new(g, vec![QmodZ::zero(); 3]);
        assert!(matches!(err, Err(Error::InvariantViolation(m)) if m.contains("degenerate")));
    }

    #[test]
    fn iso_examples() {
        assert!(iso_qlf(&pn_qlf(3), &sphere_qlf(3, 3)).unwrap().is_identity(pn_qlf(3).group()));
        assert_eq!(iso_qlf(&sphere_qlf(2, 2), &sphere_qlf(2, 4)), None);
        let w = iso_qlf(&sphere_qlf(5, 1), &sphere_qlf(5, 11)).unwrap();
        assert!(w.is_identity(sphere_qlf(5, 1).group()));
        assert_eq!(iso_qlf(&sphere_qlf(5, 1), &sphere_qlf(7, 1)), None);
    }

    #[test]
    fn classify_examples() {
        let mu0 = QmodZ::new(3, 224);
        let c = classify_pair(&sphere_qlf(3, 3), &pn_qlf(3), &mu0, &mu0);
        assert_eq!(c.verdict, Verdict::Diffeomorphic);
        assert_eq!(c.exotic_sphere_power, Some(0));
        let c = classify_pair(&sphere_qlf(3, 3), &sphere_qlf(3, 3), &mu0, &(&mu0 + &QmodZ::new(1, 28)));
        assert_eq!(c.verdict, Verdict::AlmostDiffeomorphicOnly);
        assert_eq!(c.mu_difference, Some(QmodZ::new(1, 28)));
        assert_eq!(c.exotic_sphere_power, Some(1));
        let c = classify_pair(&sphere_qlf(2, 2), &sphere_qlf(2, 4), &mu0, &mu0);
        assert_eq!(c.verdict, Verdict::Distinct);
        let c = classify_pair(&sphere_qlf(2, 2), &sphere_qlf(2, 2), &QmodZ::zero(), &QmodZ::new(1, 3));
        assert_eq!(c.exotic_sphere_power, None);
        let cb = CoboundaryData::rank_one(3, 1).unwrap();
        let c = classify_coboundaries(&cb, &cb, None, None).unwrap();
        assert_eq!(c.verdict, Verdict::Diffeomorphic);
    }

    #[test]
    fn bundle_examples() {
        let s7 = bun_enumerate(&sphere_qlf(1, 1));
        assert_eq!(s7.len(), 12);
        let ts: std::collections::BTreeSet<_> = s7.iter().map(|b| b.t.clone()).collect();
        assert_eq!(ts, (0..12).map(|s| QmodZ::new(s, 12)).collect());
        let m22 = bun_enumerate(&sphere_qlf(2, 2));
        assert_eq!(m22.len(), 24);
        let set: std::collections::BTreeSet<_> = m22.iter().cloned().collect();
        assert_eq!(set.len(), 24);
        assert_eq!(bun_enumerate(&sphere_qlf(3, 1)).len(), 36);
        let cb = CoboundaryData::rank_one(6, 2).unwrap();
        let mut a = bun_enumerate(&qlf_from_coboundary(&cb).unwrap());
        let mut b = bun_from_coboundary(&cb).unwrap();
        a.sort();
        b.sort();
        assert_eq!(a, b);
    }

    #[test]
    fn t_iso_examples() {
        let t = t_iso(&pn_qlf(3), &sphere_qlf(3, 3)).unwrap();
        assert_eq!(t.bijection.len(), 36);
        assert!(t_iso(&sphere_qlf(2, 2), &sphere_qlf(2, 4)).is_none());
        let triv = t_iso(&sphere_qlf(1, 1), &sphere_qlf(-1, 1)).unwrap();
        assert!(triv.automorphism.is_identity(&FiniteAbelian::trivial()));
        assert!(triv.bijection.iter().all(|(a, b)| a == b));
    }
}
