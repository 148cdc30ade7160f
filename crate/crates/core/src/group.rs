//! Finite abelian groups in invariant-factor form and brute-force
//! enumeration of their automorphisms.

use std::fmt;

use num_integer::Integer;
use serde::Serialize;

use crate::error::{Error, Result};

pub const DEFAULT_ORDER_BOUND: u64 = 10_000;

/// `Z/d_1 (+) ... (+) Z/d_r` with `d_1 | d_2 | ... | d_r`, each `d_i >= 2`.
///
/// Elements are coordinate vectors with `0 <= x_i < d_i`; they are indexed in
/// mixed radix with the first coordinate most significant.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct FiniteAbelian {
    factors: Vec<u64>,
    order: u64,
}

pub type Element = Vec<u64>;

impl FiniteAbelian {
    pub fn new(factors: Vec<u64>) -> Result<Self> {
        Self::with_bound(factors, DEFAULT_ORDER_BOUND)
    }

    pub fn with_bound(factors: Vec<u64>, bound: u64) -> Result<Self> {
        if let Some(d) = factors.iter().find(|&&d| d < 2) {
            return Err(Error::InvalidInput(format!("invariant factor {d} is smaller than 2")));
        }
        if let Some(w) = factors.windows(2).find(|w| w[1] % w[0] != 0) {
            return Err(Error::InvalidInput(format!("{} does not divide {}", w[0], w[1])));
        }
        let mut order: u64 = 1;
        for &d in &factors {
            order = order
                .checked_mul(d)
                .filter(|&o| o <= bound)
                .ok_or(Error::GroupTooLarge { order: order.saturating_mul(d), bound })?;
        }
        Ok(FiniteAbelian { factors, order })
    }

    pub fn cyclic(n: u64) -> Result<Self> {
        if n == 1 {
            Self::new(Vec::new())
        } else {
            Self::new(vec![n])
        }
    }

    pub fn trivial() -> Self {
        FiniteAbelian { factors: Vec::new(), order: 1 }
    }

    pub fn factors(&self) -> &[u64] {
        &self.factors
    }

    pub fn rank(&self) -> usize {
        self.factors.len()
    }

    pub fn order(&self) -> u64 {
        self.order
    }

    pub fn zero(&self) -> Element {
        vec![0; self.rank()]
    }

    pub fn generator(&self, i: usize) -> Element {
        let mut e = self.zero();
        e[i] = 1;
        e
    }

    pub fn index(&self, x: &[u64]) -> usize {
        x.iter().zip(&self.factors).fold(0u64, |acc, (xi, d)| acc * d + xi) as usize
    }

    pub fn element(&self, mut idx: usize) -> Element {
        let mut x = self.zero();
        for (xi, &d) in x.iter_mut().zip(&self.factors).rev() {
            *xi = idx as u64 % d;
            idx /= d as usize;
        }
        x
    }

    pub fn elements(&self) -> impl Iterator<Item = Element> + '_ {
        (0..self.order as usize).map(|i| self.element(i))
    }

    pub fn add(&self, x: &[u64], y: &[u64]) -> Element {
        x.iter().zip(y).zip(&self.factors).map(|((a, b), d)| (a + b) % d).collect()
    }

    pub fn neg(&self, x: &[u64]) -> Element {
        x.iter().zip(&self.factors).map(|(a, d)| (d - a) % d).collect()
    }

    pub fn scale(&self, m: i64, x: &[u64]) -> Element {
        x.iter().zip(&self.factors).map(|(a, &d)| (m.mod_floor(&(d as i64)) as u64 * a) % d).collect()
    }

    /// Reduces arbitrary integer coordinates into canonical form.
    pub fn reduce(&self, x: &[i64]) -> Element {
        x.iter().zip(&self.factors).map(|(a, &d)| a.mod_floor(&(d as i64)) as u64).collect()
    }

    pub fn element_order(&self, x: &[u64]) -> u64 {
        x.iter().zip(&self.factors).fold(1u64, |acc, (a, d)| acc.lcm(&(d / a.gcd(d))))
    }
}

impl fmt::Display for FiniteAbelian {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.factors.is_empty() {
            return f.write_str("0");
        }
        let parts: Vec<String> = self.factors.iter().map(|d| format!("Z/{d}")).collect();
        f.write_str(&parts.join(" + "))
    }
}

/// Group automorphism, stored as the images of the standard generators.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Automorphism {
    images: Vec<Element>,
}

impl Automorphism {
    pub fn identity(g: &FiniteAbelian) -> Self {
        Automorphism { images: (0..g.rank()).map(|i| g.generator(i)).collect() }
    }

    pub fn images(&self) -> &[Element] {
        &self.images
    }

    pub fn apply(&self, g: &FiniteAbelian, x: &[u64]) -> Element {
        let mut out = g.zero();
        for (xi, img) in x.iter().zip(&self.images) {
            if *xi != 0 {
                out = g.add(&out, &g.scale(*xi as i64, img));
            }
        }
        out
    }

    /// Image of every element, by index.
    pub fn table(&self, g: &FiniteAbelian) -> Vec<usize> {
        g.elements().map(|x| g.index(&self.apply(g, &x))).collect()
    }

    pub fn is_identity(&self, g: &FiniteAbelian) -> bool {
        *self == Self::identity(g)
    }

    pub fn inverse(&self, g: &FiniteAbelian) -> Automorphism {
        let table = self.table(g);
        let mut inv = vec![0usize; table.len()];
        for (i, &j) in table.iter().enumerate() {
            inv[j] = i;
        }
        Automorphism { images: (0..g.rank()).map(|i| g.element(inv[g.index(&g.generator(i))])).collect() }
    }
}

/// Streams every automorphism of `g` exactly once.
///
/// Generator `i` must go to an element of exact order `d_i`; remaining
/// candidates are kept when the induced homomorphism is a bijection.
pub fn aut_enumerate(g: &FiniteAbelian) -> AutIter<'_> {
    let candidates: Vec<Vec<Element>> =
        g.factors.iter().map(|&d| g.elements().filter(|x| g.element_order(x) == d).collect()).collect();
    let done = candidates.iter().any(Vec::is_empty);
    AutIter { group: g, cursor: vec![0; g.rank()], candidates, done, seen: vec![false; g.order() as usize] }
}

pub struct AutIter<'a> {
    group: &'a FiniteAbelian,
    candidates: Vec<Vec<Element>>,
    cursor: Vec<usize>,
    done: bool,
    seen: Vec<bool>,
}

impl AutIter<'_> {
    fn advance(&mut self) {
        for i in (0..self.cursor.len()).rev() {
            self.cursor[i] += 1;
            if self.cursor[i] < self.candidates[i].len() {
                return;
            }
            self.cursor[i] = 0;
        }
        self.done = true;
    }

    fn is_bijective(&mut self, a: &Automorphism) -> bool {
        // A map of a cyclic group sending the generator to an element of full
        // order is always an automorphism.
        if self.group.rank() <= 1 {
            return true;
        }
        self.seen.iter_mut().for_each(|s| *s = false);
        for x in self.group.elements() {
            let j = self.group.index(&a.apply(self.group, &x));
            if std::mem::replace(&mut self.seen[j], true) {
                return false;
            }
        }
        true
    }
}

impl Iterator for AutIter<'_> {
    type Item = Automorphism;

    fn next(&mut self) -> Option<Automorphism> {
        while !self.done {
            let a = Automorphism {
                images: self.cursor.iter().zip(&self.candidates).map(|(&c, cands)| cands[c].clone()).collect(),
            };
            self.advance();
            if self.is_bijective(&a) {
                return Some(a);
            }
        }
        None
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn construction() {
        assert!(FiniteAbelian::new(vec![2, 3]).is_err());
        assert!(FiniteAbelian::new(vec![1]).is_err());
        assert!(matches!(FiniteAbelian::new(vec![200, 200]), Err(Error::GroupTooLarge { .. })));
        assert!(FiniteAbelian::with_bound(vec![200, 200], 40_000).is_ok());
        let g = FiniteAbelian::new(vec![2, 4]).unwrap();
        assert_eq!(g.order(), 8);
        assert_eq!(g.to_string(), "Z/2 + Z/4");
        for i in 0..8 {
            assert_eq!(g.index(&g.element(i)), i);
        }
        assert_eq!(g.element_order(&[1, 2]), 2);
        assert_eq!(g.element_order(&[0, 1]), 4);
        assert_eq!(g.neg(&[1, 1]), vec![1, 3]);
        assert_eq!(g.reduce(&[-1, 9]), vec![1, 1]);
    }

    #[test]
    fn automorphism_counts() {
        let count = |f: Vec<u64>| aut_enumerate(&FiniteAbelian::new(f).unwrap()).count();
        assert_eq!(count(vec![5]), 4);
        assert_eq!(count(vec![2, 2]), 6);
        assert_eq!(count(vec![]), 1);
        assert_eq!(count(vec![12]), 4);
        assert_eq!(count(vec![2, 4]), 8);
        assert_eq!(count(vec![2, 2, 2]), 168);
        assert_eq!(count(vec![3, 3]), 48);
        let units: Vec<u64> = aut_enumerate(&FiniteAbelian::cyclic(5).unwrap()).map(|a| a.images()[0][0]).collect();
        assert_eq!(units, vec![1, 2, 3, 4]);
    }

    #[test]
    fn inverse_composes_to_identity() {
        let g = FiniteAbelian::new(vec![2, 4]).unwrap();
        for a in aut_enumerate(&g) {
            let inv = a.inverse(&g);
            for x in g.elements() {
                assert_eq!(inv.apply(&g, &a.apply(&g, &x)), x);
            }
        }
    }
}
