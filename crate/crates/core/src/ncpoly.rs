//! The free associative algebra `k<a_0, ..., a_{g-1}>`.

use alloc::collections::BTreeMap;
use alloc::vec::Vec;
use core::cmp::Ordering;

use crate::cpoly::accumulate;
use crate::error::{Error, Result};
use crate::scalar::{FieldSpec, Scalar};

/// A word in the generators, by generator index. The empty word is the
/// identity. Ordered by length, then lexicographically by index.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct Word(pub Vec<u32>);

impl Word {
    pub fn empty() -> Self {
        Word(Vec::new())
    }

    pub fn letter(i: u32) -> Self {
        Word(alloc::vec![i])
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn letters(&self) -> &[u32] {
        &self.0
    }

    pub fn concat(&self, other: &Word) -> Word {
        let mut v = Vec::with_capacity(self.len() + other.len());
        v.extend_from_slice(&self.0);
        v.extend_from_slice(&other.0);
        Word(v)
    }

    /// `u · self · v`.
    pub fn sandwich(&self, left: &[u32], right: &[u32]) -> Word {
        let mut v = Vec::with_capacity(left.len() + self.len() + right.len());
        v.extend_from_slice(left);
        v.extend_from_slice(&self.0);
        v.extend_from_slice(right);
        Word(v)
    }

    /// First position at which `needle` occurs as a factor of `self`.
    pub fn find(&self, needle: &[u32]) -> Option<usize> {
        if needle.len() > self.len() {
            return None;
        }
        (0..=self.len() - needle.len()).find(|&i| &self.0[i..i + needle.len()] == needle)
    }
}

impl Ord for Word {
    fn cmp(&self, other: &Self) -> Ordering {
        self.len().cmp(&other.len()).then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Word {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl From<Vec<u32>> for Word {
    fn from(v: Vec<u32>) -> Self {
        Word(v)
    }
}

/// An element of the free algebra. Zero coefficients are never stored.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct NcPoly {
    field: FieldSpec,
    terms: BTreeMap<Word, Scalar>,
}

impl NcPoly {
    pub fn zero(field: FieldSpec) -> Self {
        NcPoly { field, terms: BTreeMap::new() }
    }

    pub fn one(field: FieldSpec) -> Self {
        Self::term(field, Word::empty(), field.one())
    }

    pub fn constant(field: FieldSpec, c: Scalar) -> Self {
        Self::term(field, Word::empty(), c)
    }

    pub fn generator(field: FieldSpec, i: u32) -> Self {
        Self::term(field, Word::letter(i), field.one())
    }

    pub fn term(field: FieldSpec, w: Word, c: Scalar) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(w, c);
        }
        NcPoly { field, terms }
    }

    pub fn from_terms<I>(field: FieldSpec, terms: I) -> Result<Self>
    where
        I: IntoIterator<Item = (Word, Scalar)>,
    {
        let mut map = BTreeMap::new();
        for (w, c) in terms {
            if !field.contains(&c) {
                return Err(Error::FieldMismatch);
            }
            accumulate(&field, &mut map, w, c);
        }
        Ok(NcPoly { field, terms: map })
    }

    pub(crate) fn from_map(field: FieldSpec, terms: BTreeMap<Word, Scalar>) -> Self {
        debug_assert!(terms.values().all(|c| !c.is_zero()));
        NcPoly { field, terms }
    }

    pub(crate) fn into_map(self) -> BTreeMap<Word, Scalar> {
        self.terms
    }

    pub fn field(&self) -> FieldSpec {
        self.field
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

    /// Terms in ascending word order.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Word, &Scalar)> + '_ {
        self.terms.iter()
    }

    pub fn coefficient(&self, w: &Word) -> Scalar {
        self.terms.get(w).cloned().unwrap_or_else(|| self.field.zero())
    }

    /// Largest word with its coefficient.
    pub fn leading_term(&self) -> Option<(&Word, &Scalar)> {
        self.terms.iter().next_back()
    }

    /// Length of the longest word; `None` for zero.
    pub fn degree(&self) -> Option<usize> {
        self.leading_term().map(|(w, _)| w.len())
    }

    /// Largest generator index occurring, if any.
    pub fn max_letter(&self) -> Option<u32> {
        self.terms.keys().flat_map(|w| w.0.iter().copied()).max()
    }

    fn check_field(&self, other: &NcPoly) -> Result<()> {
        if self.field != other.field {
            Err(Error::FieldMismatch)
        } else {
            Ok(())
        }
    }

    pub fn add(&self, other: &NcPoly) -> Result<NcPoly> {
        self.check_field(other)?;
        let mut terms = self.terms.clone();
        for (w, c) in &other.terms {
            accumulate(&self.field, &mut terms, w.clone(), c.clone());
        }
        Ok(NcPoly { field: self.field, terms })
    }

    pub fn neg(&self) -> NcPoly {
        self.scale(&self.field.neg(&self.field.one()))
    }

    pub fn sub(&self, other: &NcPoly) -> Result<NcPoly> {
        self.add(&other.neg())
    }

    pub fn scale(&self, c: &Scalar) -> NcPoly {
        if c.is_zero() {
            return NcPoly::zero(self.field);
        }
        let terms = self.terms.iter().map(|(w, a)| (w.clone(), self.field.mul(a, c))).collect();
        NcPoly { field: self.field, terms }
    }

    pub fn mul(&self, other: &NcPoly) -> Result<NcPoly> {
        self.check_field(other)?;
        let mut terms = BTreeMap::new();
        for (w1, c1) in &self.terms {
            for (w2, c2) in &other.terms {
                accumulate(&self.field, &mut terms, w1.concat(w2), self.field.mul(c1, c2));
            }
        }
        Ok(NcPoly { field: self.field, terms })
    }

    /// `c · left · self · right` for words `left`, `right`.
    pub fn sandwich(&self, c: &Scalar, left: &[u32], right: &[u32]) -> NcPoly {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            for (w, a) in &self.terms {
                terms.insert(w.sandwich(left, right), self.field.mul(a, c));
            }
        }
        NcPoly { field: self.field, terms }
    }

    /// Scales so that the leading coefficient is one. Zero stays zero.
    pub fn monic(&self) -> NcPoly {
        match self.leading_term() {
            None => self.clone(),
            Some((_, c)) => {
                let inv = self.field.inv(c).expect("nonzero leading coefficient");
                self.scale(&inv)
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn words_do_not_commute() {
        let f = FieldSpec::Rationals;
        let a = NcPoly::generator(f, 0);
        let b = NcPoly::generator(f, 1);
        let ab = a.mul(&b).unwrap();
        let ba = b.mul(&a).unwrap();
        assert_ne!(ab, ba);
        let comm = ab.sub(&ba).unwrap();
        assert_eq!(comm.len(), 2);
        assert_eq!(comm.leading_term().unwrap().0, &Word(alloc::vec![1, 0]));
    }

    #[test]
    fn word_order_and_search() {
        assert!(Word(alloc::vec![1]) < Word(alloc::vec![0, 0]));
        assert!(Word(alloc::vec![0, 1]) < Word(alloc::vec![1, 0]));
        let w = Word(alloc::vec![0, 1, 1, 0]);
        assert_eq!(w.find(&[1, 0]), Some(2));
        assert_eq!(w.find(&[]), Some(0));
        assert_eq!(w.find(&[0, 0]), None);
    }
}
