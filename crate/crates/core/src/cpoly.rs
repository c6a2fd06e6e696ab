//! Commutative multivariate polynomials over an exact field.

use alloc::collections::BTreeMap;
use alloc::vec;
use alloc::vec::Vec;
use core::cmp::Ordering;

use crate::error::{Error, Result};
use crate::scalar::{FieldSpec, Scalar};

/// Exponent vector of a commutative monomial.
///
/// Ordered by total degree, then lexicographically with the last variable
/// most significant, so that `x1 < x2 < ... < xn`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Monomial(pub Vec<u32>);

impl Monomial {
    pub fn one(n: usize) -> Self {
        Monomial(vec![0; n])
    }

    pub fn var(n: usize, i: usize) -> Self {
        let mut e = vec![0; n];
        e[i] = 1;
        Monomial(e)
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn arity(&self) -> usize {
        self.0.len()
    }

    pub fn exponents(&self) -> &[u32] {
        &self.0
    }

    pub fn mul(&self, other: &Monomial) -> Result<Monomial> {
        debug_assert_eq!(self.arity(), other.arity());
        self.0
            .iter()
            .zip(&other.0)
            .map(|(a, b)| a.checked_add(*b).ok_or(Error::ExponentOverflow))
            .collect::<Result<Vec<_>>>()
            .map(Monomial)
    }

    /// `self / other` when `other` divides `self`.
    pub fn div(&self, other: &Monomial) -> Option<Monomial> {
        self.0
            .iter()
            .zip(&other.0)
            .map(|(a, b)| a.checked_sub(*b))
            .collect::<Option<Vec<_>>>()
            .map(Monomial)
    }

    /// All exponent vectors of length `n` and total degree `deg`, ascending.
    pub fn all_of_degree(n: usize, deg: u32) -> Vec<Monomial> {
        let mut out = Vec::new();
        let mut cur = vec![0u32; n];
        fill_compositions(&mut cur, 0, deg, &mut out);
        out.sort();
        out
    }
}

fn fill_compositions(cur: &mut Vec<u32>, idx: usize, left: u32, out: &mut Vec<Monomial>) {
    if idx + 1 == cur.len() {
        cur[idx] = left;
        out.push(Monomial(cur.clone()));
        return;
    }
    if cur.is_empty() {
        if left == 0 {
            out.push(Monomial(Vec::new()));
        }
        return;
    }
    for e in 0..=left {
        cur[idx] = e;
        fill_compositions(cur, idx + 1, left - e, out);
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree()
            .cmp(&other.degree())
            .then_with(|| self.0.iter().rev().cmp(other.0.iter().rev()))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// A polynomial in `k[x1, ..., xn]`. Zero coefficients are never stored.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct CPoly {
    field: FieldSpec,
    nvars: usize,
    terms: BTreeMap<Monomial, Scalar>,
}

pub(crate) fn accumulate<K: Ord>(
    field: &FieldSpec,
    map: &mut BTreeMap<K, Scalar>,
    key: K,
    coeff: Scalar,
) {
    if coeff.is_zero() {
        return;
    }
    use alloc::collections::btree_map::Entry;
    match map.entry(key) {
        Entry::Vacant(v) => {
            v.insert(coeff);
        }
        Entry::Occupied(mut o) => {
            let s = field.add(o.get(), &coeff);
            if s.is_zero() {
                o.remove();
            } else {
                *o.get_mut() = s;
            }
        }
    }
}

impl CPoly {
    pub fn zero(field: FieldSpec, nvars: usize) -> Self {
        CPoly { field, nvars, terms: BTreeMap::new() }
    }

    pub fn constant(field: FieldSpec, nvars: usize, c: Scalar) -> Self {
        Self::term(field, Monomial::one(nvars), c)
    }

    pub fn one(field: FieldSpec, nvars: usize) -> Self {
        Self::constant(field, nvars, field.one())
    }

    /// The variable `x_{i+1}` (zero-based index `i`).
    pub fn var(field: FieldSpec, nvars: usize, i: usize) -> Self {
        Self::term(field, Monomial::var(nvars, i), field.one())
    }

    pub fn term(field: FieldSpec, mono: Monomial, c: Scalar) -> Self {
        let nvars = mono.arity();
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(mono, c);
        }
        CPoly { field, nvars, terms }
    }

    /// Builds a polynomial from possibly repeated, possibly zero terms.
    pub fn from_terms<I>(field: FieldSpec, nvars: usize, terms: I) -> Result<Self>
    where
        I: IntoIterator<Item = (Monomial, Scalar)>,
    {
        let mut map = BTreeMap::new();
        for (m, c) in terms {
            if m.arity() != nvars {
                return Err(Error::ArityMismatch { expected: nvars, found: m.arity() });
            }
            if !field.contains(&c) {
                return Err(Error::FieldMismatch);
            }
            accumulate(&field, &mut map, m, c);
        }
        Ok(CPoly { field, nvars, terms: map })
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

    /// Terms in ascending monomial order.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Monomial, &Scalar)> + '_ {
        self.terms.iter()
    }

    pub fn coefficient(&self, m: &Monomial) -> Scalar {
        self.terms.get(m).cloned().unwrap_or_else(|| self.field.zero())
    }

    pub fn leading_term(&self) -> Option<(&Monomial, &Scalar)> {
        self.terms.iter().next_back()
    }

    /// Total degree; `None` for the zero polynomial.
    pub fn degree(&self) -> Option<u32> {
        self.terms.keys().map(Monomial::degree).max()
    }

    /// True for zero or when every term has total degree `deg`.
    pub fn is_homogeneous_of(&self, deg: u32) -> bool {
        self.terms.keys().all(|m| m.degree() == deg)
    }

    /// True for zero or when every term has the same weighted degree `deg`.
    pub fn is_weighted_homogeneous_of(&self, weights: &[u32], deg: u32) -> bool {
        self.terms.keys().all(|m| m.0.iter().zip(weights).map(|(e, w)| e * w).sum::<u32>() == deg)
    }

    fn check_compatible(&self, other: &CPoly) -> Result<()> {
        if self.field != other.field {
            return Err(Error::FieldMismatch);
        }
        if self.nvars != other.nvars {
            return Err(Error::ArityMismatch { expected: self.nvars, found: other.nvars });
        }
        Ok(())
    }

    pub fn add(&self, other: &CPoly) -> Result<CPoly> {
        self.check_compatible(other)?;
        let mut terms = self.terms.clone();
        for (m, c) in &other.terms {
            accumulate(&self.field, &mut terms, m.clone(), c.clone());
        }
        Ok(CPoly { field: self.field, nvars: self.nvars, terms })
    }

    pub fn neg(&self) -> CPoly {
        self.scale(&self.field.neg(&self.field.one()))
    }

    pub fn sub(&self, other: &CPoly) -> Result<CPoly> {
        self.add(&other.neg())
    }

    pub fn scale(&self, c: &Scalar) -> CPoly {
        if c.is_zero() {
            return CPoly::zero(self.field, self.nvars);
        }
        let terms = self.terms.iter().map(|(m, a)| (m.clone(), self.field.mul(a, c))).collect();
        CPoly { field: self.field, nvars: self.nvars, terms }
    }

    pub fn mul(&self, other: &CPoly) -> Result<CPoly> {
        self.check_compatible(other)?;
        let mut terms = BTreeMap::new();
        for (m1, c1) in &self.terms {
            for (m2, c2) in &other.terms {
                accumulate(&self.field, &mut terms, m1.mul(m2)?, self.field.mul(c1, c2));
            }
        }
        Ok(CPoly { field: self.field, nvars: self.nvars, terms })
    }

    pub fn pow(&self, mut e: u32) -> Result<CPoly> {
        let mut acc = CPoly::one(self.field, self.nvars);
        let mut base = self.clone();
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base)?;
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base)?;
            }
        }
        Ok(acc)
    }

    /// Partial derivative with respect to the zero-based variable `i`.
    pub fn derivative(&self, i: usize) -> CPoly {
        let mut terms = BTreeMap::new();
        for (m, c) in &self.terms {
            let e = m.0[i];
            if e == 0 {
                continue;
            }
            let mut exps = m.0.clone();
            exps[i] -= 1;
            let factor = self.field.from_i64(e as i64);
            accumulate(&self.field, &mut terms, Monomial(exps), self.field.mul(c, &factor));
        }
        CPoly { field: self.field, nvars: self.nvars, terms }
    }

    /// Re-embeds the polynomial with `extra` new variables inserted in front
    /// of the existing ones.
    pub fn prepend_vars(&self, extra: usize) -> CPoly {
        let terms = self
            .terms
            .iter()
            .map(|(m, c)| {
                let mut e = vec![0; extra];
                e.extend_from_slice(&m.0);
                (Monomial(e), c.clone())
            })
            .collect();
        CPoly { field: self.field, nvars: self.nvars + extra, terms }
    }
}
