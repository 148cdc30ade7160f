//! Reproduction harness: re-derives every reference value and identity as a
//! named check. Checks run on worker threads; the report is sorted by name.

use std::collections::BTreeSet;

use num_bigint::BigInt;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::charclass::{ahat_hpk, cosh_poly_coeffs, t_pullback_series, tbar_poly};
use crate::classify::{bun_enumerate, classify_pair, iso_qlf, qlf_from_coboundary, QuadraticLinkingFunction, Verdict};
use crate::closedforms::{
    fg_admissible, gwz_pn_discrepancy, sphere_bundle_invariants, t_pn, t_pullback_closed, t_s7_from_ebar, FgVerdict,
    SphereBundle7,
};
use crate::coboundary::{linking, q_t_from_coboundary, CoboundaryData};
use crate::exact::{a_const, int, qz_normalize, rat, QmodZ};
use crate::exotic::{detect_ks, pinch_twisted_table, KsBit, TTable};
use crate::homotopy::{fc_hopf, stabilize_pi7s4, t_image};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CheckReport {
    pub name: String,
    pub expected: String,
    pub computed: String,
    pub pass: bool,
}

impl CheckReport {
    fn new(name: impl Into<String>, expected: impl ToString, computed: impl ToString) -> Self {
        let (expected, computed) = (expected.to_string(), computed.to_string());
        CheckReport { name: name.into(), pass: expected == computed, expected, computed }
    }

    /// A check whose body returns the first counterexample, if any.
    fn scan(name: impl Into<String>, what: &str, count: usize, failure: Option<String>) -> Self {
        let expected = format!("{what} ({count} cases)");
        match failure {
            None => CheckReport::new(name, &expected, &expected),
            Some(f) => CheckReport::new(name, expected, format!("counterexample: {f}")),
        }
    }
}

type Check = fn() -> Vec<CheckReport>;

const CHECKS: &[Check] = &[
    oracle_grid,
    reference_values,
    congruences,
    feder_gitler,
    image_orders,
    quadratic_laws,
    ahat_series,
    classification,
    exotic_detection,
    stabilisation_loop,
    bundle_model,
    gwz_discrepancy,
];

pub fn run_paper_checks() -> Vec<CheckReport> {
    let mut reports: Vec<CheckReport> = std::thread::scope(|scope| {
        let handles: Vec<_> = CHECKS.iter().map(|check| scope.spawn(*check)).collect();
        handles.into_iter().flat_map(|h| h.join().expect("check panicked")).collect()
    });
    reports.sort_by(|a, b| a.name.cmp(&b.name));
    reports
}

fn oracle_grid() -> Vec<CheckReport> {
    (2..=8)
        .map(|k| {
            let mut failure = None;
            for c in -50..=50 {
                let closed = t_pullback_closed(c, k).unwrap();
                let series = t_pullback_series(c, k).unwrap();
                let tbar = qz_normalize(&(tbar_poly(k as usize).eval(&int(c)) * int(a_const(k).unwrap())));
                if closed != series || closed != tbar {
                    failure = Some(format!("c={c}: closed {closed}, series {series}, tbar {tbar}"));
                    break;
                }
            }
            CheckReport::scan(format!("01 oracle k={k} grid"), "closed = series = tbar", 101, failure)
        })
        .collect()
}

fn reference_values() -> Vec<CheckReport> {
    [(2, 2, QmodZ::new(1, 12), "S^7"), (33, 3, QmodZ::new(1, 15), "S^11"), (40, 4, QmodZ::new(5, 28), "S^15")]
        .into_iter()
        .map(|(c, k, expected, sphere)| {
            CheckReport::new(format!("02 t on {sphere} at c={c}"), expected, t_pullback_closed(c, k).unwrap())
        })
        .chain(std::iter::once(CheckReport::new(
            "02 trivial bundle",
            QmodZ::zero(),
            sphere_bundle_invariants(&SphereBundle7::new(1, 1).unwrap(), 0).t,
        )))
        .collect()
}

fn residues(modulus: i64, keep: impl Fn(i64) -> bool) -> BTreeSet<i64> {
    (0..modulus).filter(|&c| keep(c)).collect()
}

fn congruences() -> Vec<CheckReport> {
    let fmt = |s: &BTreeSet<i64>| format!("{} residues {:?}", s.len(), s.iter().take(8).collect::<Vec<_>>());
    let trivial_s7 = residues(24, |c| t_pullback_closed(c, 2).unwrap().is_zero());
    let cut_s7 = residues(24, |c| [0, 1].contains(&(c % 8)) && [0, 1].contains(&(c % 3)));
    let trivial_s11 =
        residues(2520, |c| fg_admissible(c, 2).unwrap().is_admissible() && t_pullback_closed(c, 3).unwrap().is_zero());
    let cut_s11 = residues(2520, |c| {
        [0, 1].contains(&(c % 8)) && [0, 1, 4, 7].contains(&(c % 9)) && [0, 1, 4].contains(&(c % 5))
    });
    vec![
        CheckReport::new("03 trivial pullbacks on S^7 mod 24", fmt(&cut_s7), fmt(&trivial_s7)),
        CheckReport::new("03 trivial pullbacks on S^11 mod 2520", fmt(&cut_s11), fmt(&trivial_s11)),
    ]
}

fn feder_gitler() -> Vec<CheckReport> {
    let squares: Vec<i64> = std::iter::once(0).chain((1..=21).step_by(2).map(|m| m * m)).collect();
    let failure = squares.iter().find(|&&c| !fg_admissible(c, 12).unwrap().is_admissible()).map(|c| format!("c={c}"));
    vec![
        CheckReport::scan("04 odd squares admissible on HP^12", "admissible", squares.len(), failure),
        CheckReport::new(
            "04 c=2 on HP^2",
            fmt_fg(FgVerdict::Fails { failing_j: 2 }),
            fmt_fg(fg_admissible(2, 2).unwrap()),
        ),
        CheckReport::new(
            "04 c=33 on HP^3",
            fmt_fg(FgVerdict::Fails { failing_j: 3 }),
            fmt_fg(fg_admissible(33, 3).unwrap()),
        ),
    ]
}

fn fmt_fg(v: FgVerdict) -> String {
    serde_json::to_string(&v).expect("plain enum")
}

fn image_orders() -> Vec<CheckReport> {
    let yes_no = |b: bool| if b { "yes" } else { "no" };
    let s11 = t_image(3, 24).unwrap();
    // t(c, 3) = 2c(c-1)(c-4)/720 mod 1 has period 720 in c.
    let s11_period = t_image(3, 720).unwrap();
    let s15 = t_image(4, 2520).unwrap();
    let within = |img: &BTreeSet<QmodZ>, m| yes_no(img.iter().all(|t| t.in_subgroup(m)));
    vec![
        CheckReport::new("05 image on S^11 (0<=c<24) within (1/15)Z/Z", "yes", within(&s11, 15)),
        CheckReport::new("05 image on S^11 (0<=c<24) attains 1/15", "yes", yes_no(s11.contains(&QmodZ::new(1, 15)))),
        CheckReport::new(
            "05 image on S^11 (full period 0<=c<720) within (1/15)Z/Z and attains 1/15",
            "yes",
            yes_no(within(&s11_period, 15) == "yes" && s11_period.contains(&QmodZ::new(1, 15))),
        ),
        CheckReport::new("05 image on S^15 (0<=c<2520) within (1/28)Z/Z", "yes", within(&s15, 28)),
        CheckReport::new(
            "05 image on S^15 (0<=c<2520) attains a generator",
            "yes",
            yes_no(s15.iter().any(|t| t.generates(28)) && s15.contains(&QmodZ::new(5, 28))),
        ),
    ]
}

/// Deterministic random coboundary data: rank `<= 4`, entries in `[-9, 9]`.
pub fn random_coboundaries(seed: u64, count: usize) -> Vec<CoboundaryData> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = Vec::with_capacity(count);
    while out.len() < count {
        let r = rng.gen_range(1..=4);
        let mut lambda = vec![vec![0i64; r]; r];
        for i in 0..r {
            for j in 0..=i {
                let v = rng.gen_range(-9..=9);
                lambda[i][j] = v;
                lambda[j][i] = v;
            }
        }
        let p = (0..r).map(|i| lambda[i][i].rem_euclid(2) + 2 * rng.gen_range(-3..=3)).collect();
        if let Ok(cb) = CoboundaryData::new(lambda, p) {
            out.push(cb);
        }
    }
    out
}

fn quadratic_laws() -> Vec<CheckReport> {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let cbs = random_coboundaries(2024, 200);
    let mut vec_of = |r: usize| -> Vec<i64> { (0..r).map(|_| rng.gen_range(-12..=12)).collect() };
    let (mut f_12t, mut f_lift, mut f_polar, mut f_homog) = (None, None, None, None);
    for (idx, cb) in cbs.iter().enumerate() {
        let r = cb.rank();
        let (x, y, z) = (vec_of(r), vec_of(r), vec_of(r));
        let qt = q_t_from_coboundary(cb, &x).unwrap();
        if qt.q != &qt.t * 12 {
            f_12t.get_or_insert(format!("cb #{idx}"));
        }
        let lz: Vec<i64> = cb.lambda().iter().map(|row| row.iter().zip(&z).map(|(a, b)| a * b).sum()).collect();
        let shifted: Vec<i64> = x.iter().zip(&lz).map(|(a, b)| a + b).collect();
        if q_t_from_coboundary(cb, &shifted).unwrap().q != qt.q {
            f_lift.get_or_insert(format!("cb #{idx}"));
        }
        let sum: Vec<i64> = x.iter().zip(&y).map(|(a, b)| a + b).collect();
        let q = |v: &[i64]| q_t_from_coboundary(cb, v).unwrap().q;
        if &(&q(&sum) - &q(&x)) - &q(&y) != linking(cb, &x, &y).unwrap() {
            f_polar.get_or_insert(format!("cb #{idx}"));
        }
        let neg: Vec<i64> = x.iter().map(|a| -a).collect();
        if q(&x) - q(&neg) != linking(cb, cb.p(), &x).unwrap() {
            f_homog.get_or_insert(format!("cb #{idx}"));
        }
    }
    vec![
        CheckReport::scan("06 q = 12 t", "holds", cbs.len(), f_12t),
        CheckReport::scan("06 q well defined on cokernel", "holds", cbs.len(), f_lift),
        CheckReport::scan("06 polarization equals linking", "holds", cbs.len(), f_polar),
        CheckReport::scan("06 homogeneity defect equals linking with p", "holds", cbs.len(), f_homog),
    ]
}

fn ahat_series() -> Vec<CheckReport> {
    let ahat_fail = (1..=8usize).find_map(|k| {
        let s = ahat_hpk(k).series;
        let ok = *s.coeff(1) == rat(-(2 * k as i64 - 2), 24) && *s.coeff(k) == int(0);
        (!ok).then(|| format!("k={k}: {s}"))
    });
    let lead_fail = (1..=8usize).find_map(|n| {
        let lead = cosh_poly_coeffs(n)[n].clone();
        (lead != BigInt::from(2).pow(2 * n as u32 - 1)).then(|| format!("n={n}: {lead}"))
    });
    let mut pairs = 0;
    let mut tbar_fail = None;
    for n in 1..=6usize {
        let p = cosh_poly_coeffs(n);
        for k in 1..=n {
            pairs += 1;
            let lhs = tbar_poly(k).eval(&int((n * n) as i64)) * int(4).pow(k as i32);
            if lhs != crate::exact::Rational::from_integer(p[k].clone()) {
                tbar_fail.get_or_insert(format!("n={n} k={k}"));
            }
        }
    }
    vec![
        CheckReport::scan("07 A-hat series normalization", "degree 1 = -(2k-2)/24, degree k = 0", 8, ahat_fail),
        CheckReport::scan("07 cosh polynomial leading terms", "2^(2n-1)", 8, lead_fail),
        CheckReport::scan("07 tbar at squares", "2^(2k) tbar_k(n^2) = p_(n,k)", pairs, tbar_fail),
    ]
}

fn sphere_qlf(n: i64, p: i64) -> QuadraticLinkingFunction {
    qlf_from_coboundary(&CoboundaryData::rank_one(n, p).unwrap()).unwrap()
}

fn pn_qlf(n: i64) -> QuadraticLinkingFunction {
    QuadraticLinkingFunction::cyclic_from_fn(n as u64, |k| t_pn(n, k).unwrap() * 12).unwrap()
}

/// Isomorphism test by exhaustive search over bijections of the underlying
/// sets: images are assigned element by element (only q-preserving choices
/// survive) and each complete bijection is tested for additivity.
pub fn brute_force_iso(q1: &QuadraticLinkingFunction, q2: &QuadraticLinkingFunction) -> bool {
    let g = q1.group();
    if g != q2.group() {
        return false;
    }
    let elems: Vec<_> = g.elements().collect();
    let n = elems.len();
    let sum: Vec<Vec<usize>> =
        (0..n).map(|i| (0..n).map(|j| g.index(&g.add(&elems[i], &elems[j]))).collect()).collect();
    fn extend(
        i: usize,
        perm: &mut Vec<usize>,
        used: &mut [bool],
        q1: &QuadraticLinkingFunction,
        q2: &QuadraticLinkingFunction,
        sum: &[Vec<usize>],
    ) -> bool {
        let n = used.len();
        if i == n {
            return (0..n).all(|a| (0..n).all(|b| perm[sum[a][b]] == sum[perm[a]][perm[b]]));
        }
        for j in 0..n {
            if used[j] || q1.values()[i] != q2.values()[j] {
                continue;
            }
            used[j] = true;
            perm.push(j);
            if extend(i + 1, perm, used, q1, q2, sum) {
                return true;
            }
            perm.pop();
            used[j] = false;
        }
        false
    }
    extend(0, &mut Vec::with_capacity(n), &mut vec![false; n], q1, q2, &sum)
}

/// Quadratic linking functions on groups of order at most 8, drawn from
/// random coboundaries, grouped by group.
pub fn small_qlf_pool() -> Vec<Vec<QuadraticLinkingFunction>> {
    let mut by_group: Vec<Vec<QuadraticLinkingFunction>> = Vec::new();
    let mut rng = ChaCha8Rng::seed_from_u64(99);
    let mut attempts = 0;
    while attempts < 4000 {
        attempts += 1;
        let r = rng.gen_range(1..=3);
        let mut lambda = vec![vec![0i64; r]; r];
        for i in 0..r {
            for j in 0..=i {
                let v = rng.gen_range(-4..=4);
                lambda[i][j] = v;
                lambda[j][i] = v;
            }
        }
        let p = (0..r).map(|i| lambda[i][i].rem_euclid(2) + 2 * rng.gen_range(-2..=2)).collect();
        let Ok(cb) = CoboundaryData::new(lambda, p) else { continue };
        let Ok(q) = qlf_from_coboundary(&cb) else { continue };
        if q.group().order() > 8 || q.group().order() < 2 {
            continue;
        }
        match by_group.iter_mut().find(|v| v[0].group() == q.group()) {
            Some(v) if v.len() < 5 && !v.contains(&q) => v.push(q),
            Some(_) => {}
            None => by_group.push(vec![q]),
        }
    }
    by_group
}

fn classification() -> Vec<CheckReport> {
    let pn_fail = (1..=50).find(|&n| iso_qlf(&pn_qlf(n), &sphere_qlf(n, n)).is_none()).map(|n| format!("n={n}"));
    let mu0 = QmodZ::new(3, 224);
    let shifted = &mu0 + &QmodZ::new(1, 28);
    let m33 = sphere_qlf(3, 3);
    let mut compared = 0;
    let mut brute_fail = None;
    for family in small_qlf_pool() {
        for a in &family {
            for b in &family {
                compared += 1;
                if iso_qlf(a, b).is_some() != brute_force_iso(a, b) {
                    brute_fail.get_or_insert(format!("{:?} vs {:?}", a.values(), b.values()));
                }
            }
        }
    }
    vec![
        CheckReport::scan("08 P_n almost diffeomorphic to M_{n,n}", "iso exists", 50, pn_fail),
        CheckReport::new(
            "08 M_{2,2} vs M_{2,4}",
            "none",
            iso_qlf(&sphere_qlf(2, 2), &sphere_qlf(2, 4)).map_or("none", |_| "witness"),
        ),
        CheckReport::new(
            "08 mu differs by 1/28",
            serde_json::to_string(&Verdict::AlmostDiffeomorphicOnly).unwrap(),
            serde_json::to_string(&classify_pair(&m33, &m33, &mu0, &shifted).verdict).unwrap(),
        ),
        CheckReport::new(
            "08 equal mu",
            serde_json::to_string(&Verdict::Diffeomorphic).unwrap(),
            serde_json::to_string(&classify_pair(&m33, &pn_qlf(3), &mu0, &mu0).verdict).unwrap(),
        ),
        CheckReport::scan("08 iso agrees with brute force", "agree", compared, brute_fail),
    ]
}

fn exotic_detection() -> Vec<CheckReport> {
    let mut count = 0;
    let mut failure = None;
    for n in (-20..=20i64).filter(|n| *n != 0 && n % 2 == 0) {
        for p in (-20..=20i64).filter(|p| p % 2 == 0) {
            count += 1;
            let tab = TTable::untwisted(SphereBundle7::new(n, p).unwrap()).unwrap();
            let tw = pinch_twisted_table(&tab).unwrap();
            let mut bad = tab.clone();
            let c2 = tab.order() - 1;
            bad.set(c2, 4, tab.get(c2, 4) + &QmodZ::new(1, 3));
            let got = (detect_ks(&tab, &tw), detect_ks(&tab, &tab), detect_ks(&tab, &bad));
            if got != (Ok(KsBit::One), Ok(KsBit::Zero), Ok(KsBit::Inconsistent)) {
                failure.get_or_insert(format!("n={n} p={p}: {got:?}"));
            }
        }
    }
    vec![CheckReport::scan(
        "09 Kirby-Siebenmann detection",
        "twist=1, identity=0, corrupted=inconsistent",
        count,
        failure,
    )]
}

fn stabilisation_loop() -> Vec<CheckReport> {
    let failure = (-100..=100).find_map(|c| {
        let s = stabilize_pi7s4(&fc_hopf(c));
        let ok = s == c.rem_euclid(24) && t_s7_from_ebar(s) == t_pullback_closed(c, 2).unwrap();
        (!ok).then(|| format!("c={c}"))
    });
    vec![CheckReport::scan("10 stabilisation loop on S^7", "F_c o H stabilises to c, t agrees", 201, failure)]
}

fn bundle_model() -> Vec<CheckReport> {
    let mut count = 0;
    let (mut card_fail, mut lift_fail) = (None, None);
    let twelfth_group = |t: &QmodZ| t.in_subgroup(12);
    for n in (-20..=20i64).filter(|&n| n != 0) {
        for p in (-20..=20i64).filter(|p| (p - n) % 2 == 0) {
            count += 1;
            let m = SphereBundle7::new(n, p).unwrap();
            let classes = bun_enumerate(&sphere_qlf(n, p));
            let distinct: BTreeSet<_> = classes.iter().collect();
            if classes.len() != 12 * n.unsigned_abs() as usize || distinct.len() != classes.len() {
                card_fail.get_or_insert(format!("n={n} p={p}"));
            }
            for k in -n.abs()..n.abs() {
                let (a, b) = (sphere_bundle_invariants(&m, k), sphere_bundle_invariants(&m, k + n));
                let dt = &b.t - &a.t;
                if a.q != b.q || !twelfth_group(&dt) || dt != QmodZ::from(rat(p + 2 * k + n, 24)) {
                    lift_fail.get_or_insert(format!("n={n} p={p} k={k}"));
                }
            }
        }
    }
    vec![
        CheckReport::scan("11 Bun(M) has 12|H^4| classes, (c2, t) injective", "holds", count, card_fail),
        CheckReport::scan("11 lift independence", "q fixed, t shifts by (p+2k+n)/24", count, lift_fail),
    ]
}

fn gwz_discrepancy() -> Vec<CheckReport> {
    let mut nonzero = 0;
    let mut failure = None;
    for n in 1..=30i64 {
        for k in -30..=30i64 {
            let got = gwz_pn_discrepancy(n, k).unwrap();
            let expect = QmodZ::from(rat(k * (k + 1) * (n - 1), 6));
            let zero_iff = got.is_zero() == ((k * (k + 1) * (n - 1)) % 6 == 0);
            if got != expect || !zero_iff {
                failure.get_or_insert(format!("n={n} k={k}: {got}"));
            }
            nonzero += usize::from(!got.is_zero());
        }
    }
    vec![
        CheckReport::scan("12 GWZ vs P_n formula discrepancy", "k(k+1)(n-1)/6 mod 1", 30 * 61, failure),
        CheckReport::new("12 discrepancy at n=3 k=1", QmodZ::new(2, 3), gwz_pn_discrepancy(3, 1).unwrap()),
        CheckReport::new(
            "12 discrepancy is visible",
            "nonzero somewhere: true",
            format!("nonzero somewhere: {}", nonzero > 0),
        ),
    ]
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn every_check_passes() {
        let reports = run_paper_checks();
        // The literal S^11 attainment over 0 <= c < 24 is the one known failure:
        // the only admissible c there are 0, 1, 9, 16 and all give t = 0.
        let failing: Vec<&str> = reports.iter().filter(|r| !r.pass).map(|r| r.name.as_str()).collect();
        assert_eq!(failing, vec!["05 image on S^11 (0<=c<24) attains 1/15"]);
        assert!(reports.windows(2).all(|w| w[0].name < w[1].name));
        let k4 = reports.iter().find(|r| r.name == "02 t on S^15 at c=40").unwrap();
        assert_eq!(k4.computed, "5/28");
    }
}
