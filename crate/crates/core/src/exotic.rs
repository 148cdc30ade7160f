//! Detecting the Kirby-Siebenmann class of a homeomorphism `h: N -> M`
//! between sphere bundles `M_{n,p}` from two t-tables.
//!
//! For cyclic `H^4(M) = Z/n` with `n` even, `(x . c2)[M]_2` is `c2 mod 2`.

use serde::Serialize;

use crate::closedforms::{sphere_bundle_invariants, SphereBundle7};
use crate::error::{Error, Result};
use crate::exact::QmodZ;

/// t-invariants of all `12 |n|` bundles on `M_{n,p}`, keyed by `(c2, s)` with
/// `c2 in Z/n` and `s in Z/12` the offset from the base point.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TTable {
    manifold: SphereBundle7,
    entries: Vec<QmodZ>,
}

impl TTable {
    /// Untwisted table, with base points `t(c2, 0) = c2 (p + c2) / (24 n)`
    /// on the canonical lift `0 <= c2 < |n|`.
    pub fn untwisted(manifold: SphereBundle7) -> Result<Self> {
        if manifold.n() % 2 != 0 {
            return Err(Error::NoTwoTorsion(manifold.n()));
        }
        let twelfth = QmodZ::new(1, 12);
        let mut entries = Vec::with_capacity(12 * manifold.order() as usize);
        for c2 in 0..manifold.order() as i64 {
            let base = sphere_bundle_invariants(&manifold, c2).t;
            entries.extend((0..12).map(|s| &base + &(&twelfth * s)));
        }
        Ok(TTable { manifold, entries })
    }

    pub fn manifold(&self) -> &SphereBundle7 {
        &self.manifold
    }

    pub fn order(&self) -> u64 {
        self.manifold.order()
    }

    fn slot(&self, c2: u64, s: u8) -> usize {
        assert!(c2 < self.order() && s < 12, "entry ({c2}, {s}) out of range");
        c2 as usize * 12 + s as usize
    }

    pub fn get(&self, c2: u64, s: u8) -> &QmodZ {
        &self.entries[self.slot(c2, s)]
    }

    pub fn set(&mut self, c2: u64, s: u8, t: QmodZ) {
        let i = self.slot(c2, s);
        self.entries[i] = t;
    }

    pub fn iter(&self) -> impl Iterator<Item = ((u64, u8), &QmodZ)> {
        self.entries.iter().enumerate().map(|(i, t)| (((i / 12) as u64, (i % 12) as u8), t))
    }
}

/// Table of `p(x)^* E` for the pinch map twisted by `6 in pi_7(BS^3)`: odd
/// classes pick up `1/2`, even ones are unchanged.
pub fn pinch_twisted_table(tab: &TTable) -> Result<TTable> {
    if tab.manifold.n() % 2 != 0 {
        return Err(Error::NoTwoTorsion(tab.manifold.n()));
    }
    let half = QmodZ::new(1, 2);
    let mut out = tab.clone();
    for (i, t) in out.entries.iter_mut().enumerate() {
        if (i / 12) % 2 == 1 {
            *t = &*t + &half;
        }
    }
    Ok(out)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum KsBit {
    Zero,
    One,
    Inconsistent,
}

impl KsBit {
    pub fn as_str(&self) -> &'static str {
        match self {
            KsBit::Zero => "0",
            KsBit::One => "1",
            KsBit::Inconsistent => "inconsistent",
        }
    }
}

/// Recovers `KS(h)` from `delta(E) = t_N(h^* E) - t_M(E)`, which must equal
/// `kappa (c2(E) mod 2) / 2` for a single `kappa`.
pub fn detect_ks(tab_m: &TTable, tab_n_pulled: &TTable) -> Result<KsBit> {
    if tab_m.manifold != tab_n_pulled.manifold {
        return Err(Error::ShapeMismatch(format!("{:?} vs {:?}", tab_m.manifold, tab_n_pulled.manifold)));
    }
    if tab_m.manifold.n() % 2 != 0 {
        return Err(Error::NoTwoTorsion(tab_m.manifold.n()));
    }
    let half = QmodZ::new(1, 2);
    let mut kappa: Option<bool> = None;
    for ((c2, s), t_m) in tab_m.iter() {
        let delta = tab_n_pulled.get(c2, s) - t_m;
        let odd = c2 % 2 == 1;
        let bit = if delta.is_zero() {
            false
        } else if delta == half {
            true
        } else {
            return Ok(KsBit::Inconsistent);
        };
        if !odd {
            if bit {
                return Ok(KsBit::Inconsistent);
            }
            continue;
        }
        match kappa {
            None => kappa = Some(bit),
            Some(k) if k != bit => return Ok(KsBit::Inconsistent),
            Some(_) => {}
        }
    }
    Ok(if kappa == Some(true) { KsBit::One } else { KsBit::Zero })
}
