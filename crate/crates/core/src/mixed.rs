//! The mixed ring `k<a_J>[x_1, ..., x_n]`: noncommuting generators with
//! central commuting variables.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::vec::Vec;

use crate::cpoly::{accumulate, CPoly, Monomial};
use crate::error::{Error, Result};
use crate::ncpoly::{NcPoly, Word};
use crate::scalar::{FieldSpec, Scalar};

/// Sum of terms `c · (word ⊗ x^alpha)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct MixedPoly {
    field: FieldSpec,
    nvars: usize,
    terms: BTreeMap<(Word, Monomial), Scalar>,
}

impl MixedPoly {
    pub fn zero(field: FieldSpec, nvars: usize) -> Self {
        MixedPoly { field, nvars, terms: BTreeMap::new() }
    }

    pub fn one(field: FieldSpec, nvars: usize) -> Self {
        Self::term(field, Word::empty(), Monomial::one(nvars), field.one())
    }

    pub fn term(field: FieldSpec, word: Word, mono: Monomial, c: Scalar) -> Self {
        let nvars = mono.arity();
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert((word, mono), c);
        }
        MixedPoly { field, nvars, terms }
    }

    pub fn from_terms<I>(field: FieldSpec, nvars: usize, terms: I) -> Result<Self>
    where
        I: IntoIterator<Item = (Word, Monomial, Scalar)>,
    {
        let mut map = BTreeMap::new();
        for (w, m, c) in terms {
            if m.arity() != nvars {
                return Err(Error::ArityMismatch { expected: nvars, found: m.arity() });
            }
            if !field.contains(&c) {
                return Err(Error::FieldMismatch);
            }
            accumulate(&field, &mut map, (w, m), c);
        }
        Ok(MixedPoly { field, nvars, terms: map })
    }

    /// `1 ⊗ f`.
    pub fn from_cpoly(f: &CPoly) -> Self {
        let terms = f.terms().map(|(m, c)| ((Word::empty(), m.clone()), c.clone())).collect();
        MixedPoly { field: f.field(), nvars: f.nvars(), terms }
    }

    /// `p ⊗ 1`.
    pub fn from_ncpoly(p: &NcPoly, nvars: usize) -> Self {
        let terms =
            p.terms().map(|(w, c)| ((w.clone(), Monomial::one(nvars)), c.clone())).collect();
        MixedPoly { field: p.field(), nvars, terms }
    }

    pub fn field(&self) -> FieldSpec {
        self.field
    }

    pub fn nvars(&self) -> usize {
        self.nvars
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

    pub fn terms(&self) -> impl Iterator<Item = (&Word, &Monomial, &Scalar)> + '_ {
        self.terms.iter().map(|((w, m), c)| (w, m, c))
    }

    fn check_compatible(&self, other: &MixedPoly) -> Result<()> {
        if self.field != other.field {
            return Err(Error::FieldMismatch);
        }
        if self.nvars != other.nvars {
            return Err(Error::ArityMismatch { expected: self.nvars, found: other.nvars });
        }
        Ok(())
    }

    pub fn add(&self, other: &MixedPoly) -> Result<MixedPoly> {
        self.check_compatible(other)?;
        let mut terms = self.terms.clone();
        for (k, c) in &other.terms {
            accumulate(&self.field, &mut terms, k.clone(), c.clone());
        }
        Ok(MixedPoly { field: self.field, nvars: self.nvars, terms })
    }

    pub fn sub(&self, other: &MixedPoly) -> Result<MixedPoly> {
        let minus_one = self.field.neg(&self.field.one());
        let neg = MixedPoly {
            field: other.field,
            nvars: other.nvars,
            terms: other
                .terms
                .iter()
                .map(|(k, c)| (k.clone(), other.field.mul(c, &minus_one)))
                .collect(),
        };
        self.add(&neg)
    }

    /// `(u ⊗ α)(v ⊗ β) = uv ⊗ αβ`, extended bilinearly.
    pub fn mul(&self, other: &MixedPoly) -> Result<MixedPoly> {
        self.check_compatible(other)?;
        let mut terms = BTreeMap::new();
        for ((u, alpha), c1) in &self.terms {
            for ((v, beta), c2) in &other.terms {
                accumulate(
                    &self.field,
                    &mut terms,
                    (u.concat(v), alpha.mul(beta)?),
                    self.field.mul(c1, c2),
                );
            }
        }
        Ok(MixedPoly { field: self.field, nvars: self.nvars, terms })
    }

    /// Repeated product; `p^0 = 1 ⊗ 1`.
    pub fn pow(&self, e: u32) -> Result<MixedPoly> {
        let mut acc = MixedPoly::one(self.field, self.nvars);
        for _ in 0..e {
            acc = acc.mul(self)?;
        }
        Ok(acc)
    }

    /// The noncommutative coefficient of `x^exps`.
    pub fn coeff_of_xmonomial(&self, exps: &Monomial) -> Result<NcPoly> {
        if exps.arity() != self.nvars {
            return Err(Error::ArityMismatch { expected: self.nvars, found: exps.arity() });
        }
        let terms: BTreeMap<Word, Scalar> = self
            .terms
            .iter()
            .filter(|((_, m), _)| m == exps)
            .map(|((w, _), c)| (w.clone(), c.clone()))
            .collect();
        Ok(NcPoly::from_map(self.field, terms))
    }

    /// Distinct x-monomials carrying a nonzero coefficient, ascending.
    pub fn x_monomials(&self) -> Vec<Monomial> {
        let set: BTreeSet<&Monomial> = self.terms.keys().map(|(_, m)| m).collect();
        set.into_iter().cloned().collect()
    }
}
