//! Noncommutative polynomials in `m_i^j` and `∂_i^j`, matrices over any
//! algebra, matrix copies and the defining relation sets.

mod build;
mod matrix;

use std::collections::btree_map::Entry;
use std::collections::BTreeMap;
use std::fmt;

use smallvec::SmallVec;

use crate::arith::Scalar;
use crate::error::{Error, Result};

pub use build::{relations, Calc, RelationKind, RelationSet};
pub use matrix::{Algebra, FreeAlgebra, OpMatrix};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Kind {
    M,
    Del,
}

/// A generator `m_i^j` or `∂_i^j`; `i`, `j` are 0-based.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Gen {
    pub kind: Kind,
    pub i: u8,
    pub j: u8,
}

impl Gen {
    pub fn new(kind: Kind, i: usize, j: usize, n: usize) -> Result<Self> {
        if i >= n || j >= n {
            return Err(Error::IndexOutOfRange(format!("generator ({}, {}) with N = {n}", i + 1, j + 1)));
        }
        Ok(Gen { kind, i: i as u8, j: j as u8 })
    }

    pub fn m(i: usize, j: usize) -> Self {
        Gen { kind: Kind::M, i: i as u8, j: j as u8 }
    }

    pub fn d(i: usize, j: usize) -> Self {
        Gen { kind: Kind::Del, i: i as u8, j: j as u8 }
    }

    /// Position within its own alphabet: `i·N + j`.
    pub fn letter(&self, n: usize) -> usize {
        self.i as usize * n + self.j as usize
    }

    pub fn from_letter(kind: Kind, letter: usize, n: usize) -> Self {
        Gen { kind, i: (letter / n) as u8, j: (letter % n) as u8 }
    }
}

impl fmt::Display for Gen {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let c = match self.kind {
            Kind::M => 'm',
            Kind::Del => 'd',
        };
        write!(f, "{c}[{},{}]", self.i + 1, self.j + 1)
    }
}

pub type Word = SmallVec<[Gen; 8]>;

pub fn word_label(w: &[Gen]) -> String {
    if w.is_empty() {
        return "1".into();
    }
    w.iter().map(|g| g.to_string()).collect::<Vec<_>>().join("*")
}

/// `(m-degree, ∂-degree)` of a word.
pub fn bidegree(w: &[Gen]) -> (usize, usize) {
    let m = w.iter().filter(|g| g.kind == Kind::M).count();
    (m, w.len() - m)
}

/// Linear combination of words, stored verbatim.
#[derive(Clone, Default, PartialEq)]
pub struct NcPoly {
    terms: BTreeMap<Word, Scalar>,
}

impl NcPoly {
    pub fn zero() -> Self {
        NcPoly::default()
    }

    pub fn constant(c: Scalar) -> Self {
        let mut p = NcPoly::zero();
        p.add_term(Word::new(), c);
        p
    }

    pub fn gen(g: Gen) -> Self {
        Self::word(std::iter::once(g).collect(), Scalar::one())
    }

    pub fn word(w: Word, c: Scalar) -> Self {
        let mut p = NcPoly::zero();
        p.add_term(w, c);
        p
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Word, &Scalar)> {
        self.terms.iter()
    }

    pub fn coeff(&self, w: &[Gen]) -> Scalar {
        self.terms.get(w).cloned().unwrap_or_else(Scalar::zero)
    }

    pub fn add_term(&mut self, w: Word, c: Scalar) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(w) {
            Entry::Vacant(v) => {
                v.insert(c);
            }
            Entry::Occupied(mut o) => {
                *o.get_mut() += &c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn add_scaled(&mut self, other: &NcPoly, c: &Scalar) {
        for (w, v) in &other.terms {
            self.add_term(w.clone(), v * c);
        }
    }

    pub fn scale(&self, c: &Scalar) -> NcPoly {
        let mut out = NcPoly::zero();
        out.add_scaled(self, c);
        out
    }

    pub fn mul(&self, other: &NcPoly) -> NcPoly {
        let mut out = NcPoly::zero();
        for (a, x) in &self.terms {
            for (b, y) in &other.terms {
                let mut w = a.clone();
                w.extend_from_slice(b);
                out.add_term(w, x * y);
            }
        }
        out
    }

    /// Distinct bidegrees present.
    pub fn bidegrees(&self) -> Vec<(usize, usize)> {
        let mut d: Vec<_> = self.terms.keys().map(|w| bidegree(w)).collect();
        d.sort();
        d.dedup();
        d
    }

    pub fn max_len(&self) -> usize {
        self.terms.keys().map(|w| w.len()).max().unwrap_or(0)
    }

    /// Whether every word is an m-block followed by a ∂-block.
    pub fn is_split(&self) -> bool {
        self.terms.keys().all(|w| w.windows(2).all(|p| !(p[0].kind == Kind::Del && p[1].kind == Kind::M)))
    }
}

impl fmt::Display for NcPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self
            .terms
            .iter()
            .map(|(w, c)| if w.is_empty() { format!("({c})") } else { format!("({c})*{}", word_label(w)) })
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}

impl fmt::Debug for NcPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn words_are_not_reordered() {
        let a = NcPoly::gen(Gen::m(0, 1));
        let b = NcPoly::gen(Gen::d(1, 0));
        let ab = a.mul(&b);
        let ba = b.mul(&a);
        assert_ne!(ab, ba);
        assert!(ab.is_split() && !ba.is_split());
        assert_eq!(ab.to_string(), "(1)*m[1,2]*d[2,1]");
        assert_eq!(ab.bidegrees(), vec![(1, 1)]);
    }

    #[test]
    fn cancellation_drops_terms() {
        let a = NcPoly::gen(Gen::m(0, 0));
        let mut p = a.clone();
        p.add_scaled(&a, &Scalar::from_int(-1));
        assert!(p.is_zero());
    }

    #[test]
    fn generator_bounds() {
        assert!(Gen::new(Kind::M, 2, 0, 2).is_err());
        assert_eq!(Gen::new(Kind::Del, 1, 0, 2).unwrap().letter(2), 2);
        assert_eq!(Gen::from_letter(Kind::M, 3, 2), Gen::m(1, 1));
    }
}
