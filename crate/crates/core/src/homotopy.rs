//! Homotopy-group bookkeeping on spheres: `pi_7(S^4)`, its stabilisation,
//! the e-invariant relation on `Bun(S^7)`, and the stabilisation of
//! `Bun(S^15) = Z/84 + Z/2 + Z/2` into `pi_11^S = Z/504`.
//!
//! The sign of the e-invariant is fixed so that `t(E_c) = c(c-1)/24` on `S^7`.

use std::collections::BTreeSet;

use num_integer::Integer;
use serde::Serialize;

use crate::closedforms::{fg_admissible, t_pullback_closed, t_s7_from_ebar, FgVerdict};
use crate::error::{Error, Result};
use crate::exact::QmodZ;

/// `(a, [b])` in `pi_7(S^4) = Z[H] (+) S pi_6(S^3)`, `S pi_6(S^3) = Z/12`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct Pi7S4Element {
    pub hopf_mult: i64,
    pub torsion: u8,
}

impl Pi7S4Element {
    pub fn new(hopf_mult: i64, torsion: i64) -> Self {
        Pi7S4Element { hopf_mult, torsion: torsion.mod_floor(&12) as u8 }
    }
}

/// Stabilisation `pi_7(S^4) -> pi_3^S = Z/24`, `(a, [b]) -> [a - 2b]`.
pub fn stabilize_pi7s4(e: &Pi7S4Element) -> i64 {
    (e.hopf_mult - 2 * e.torsion as i64).mod_floor(&24)
}

/// `[F_c o H] = (c^2, [c(c-1)/2])`.
pub fn fc_hopf(c: i64) -> Pi7S4Element {
    Pi7S4Element::new(c * c, (c * (c - 1) / 2).mod_floor(&12))
}

/// `(x mod 84, y mod 2, z mod 2)` in `pi_14(S^3)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct BunS15Element {
    pub x: u8,
    pub y: u8,
    pub z: u8,
}

impl BunS15Element {
    pub fn new(x: i64, y: i64, z: i64) -> Self {
        BunS15Element { x: x.mod_floor(&84) as u8, y: y.mod_floor(&2) as u8, z: z.mod_floor(&2) as u8 }
    }
}

/// Stabilisation `pi_14(S^3) -> pi_11^S = Z/504`, `(x, y, z) -> 36 x`.
pub fn stabilize_s15(e: &BunS15Element) -> i64 {
    (36 * e.x as i64).mod_floor(&504)
}

/// Values of `t_{S^(4k-1)}(p_k^* E_c)` over `0 <= c < modulus` for those `c`
/// that pass the Feder-Gitler test on `HP^(k-1)`.
pub fn t_image(k: i64, modulus: i64) -> Result<BTreeSet<QmodZ>> {
    if k < 3 {
        return Err(Error::InvalidInput(format!("image scan needs k >= 3, got {k}")));
    }
    let mut out = BTreeSet::new();
    for c in 0..modulus {
        if fg_admissible(c, k - 1)?.is_admissible() {
            out.insert(t_pullback_closed(c, k)?);
        }
    }
    Ok(out)
}

/// Everything the `sphere` command reports about `p_k^* E_c` on `S^(4k-1)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SphereReport {
    pub k: i64,
    pub c: i64,
    pub t: QmodZ,
    /// Feder-Gitler test for `E_c` to exist on `HP^(k-1)`.
    pub admissibility: FgVerdict,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub pi7s4: Option<Pi7S4Element>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub stabilisation: Option<i64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub t_from_ebar: Option<QmodZ>,
}

pub fn sphere_report(k: i64, c: i64) -> Result<SphereReport> {
    if !(2..=4).contains(&k) {
        return Err(Error::InvalidInput(format!("sphere needs k in 2..=4, got {k}")));
    }
    let t = t_pullback_closed(c, k)?;
    let admissibility = if k == 2 { FgVerdict::Admissible } else { fg_admissible(c, k - 1)? };
    let (pi7s4, stabilisation, t_from_ebar) = if k == 2 {
        let e = fc_hopf(c);
        let s = stabilize_pi7s4(&e);
        (Some(e), Some(s), Some(t_s7_from_ebar(s)))
    } else {
        (None, None, None)
    };
    Ok(SphereReport { k, c, t, admissibility, pi7s4, stabilisation, t_from_ebar })
}
