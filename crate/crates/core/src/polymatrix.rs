//! Square matrices with commutative polynomial entries.

use alloc::collections::BTreeSet;
use alloc::vec::Vec;

use crate::cpoly::{CPoly, Monomial};
use crate::error::Result;
use crate::linalg::Matrix;
use crate::presentation::FormSpec;
use crate::scalar::{FieldSpec, Scalar};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct PolyMatrix {
    field: FieldSpec,
    nvars: usize,
    size: usize,
    entries: Vec<CPoly>,
}

/// Location of a nonzero coefficient in a polynomial matrix.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EntryWitness {
    pub monomial: Monomial,
    pub row: usize,
    pub col: usize,
    pub value: Scalar,
}

impl PolyMatrix {
    pub fn zero(field: FieldSpec, nvars: usize, size: usize) -> Self {
        PolyMatrix {
            field,
            nvars,
            size,
            entries: alloc::vec![CPoly::zero(field, nvars); size * size],
        }
    }

    /// `f · Id`.
    pub fn scalar(f: &CPoly, size: usize) -> Self {
        let mut m = Self::zero(f.field(), f.nvars(), size);
        for i in 0..size {
            m.entries[i * size + i] = f.clone();
        }
        m
    }

    pub fn identity(field: FieldSpec, nvars: usize, size: usize) -> Self {
        Self::scalar(&CPoly::one(field, nvars), size)
    }

    /// Row-major entries; the caller guarantees field and arity agree.
    pub fn from_entries(field: FieldSpec, nvars: usize, size: usize, entries: Vec<CPoly>) -> Self {
        assert_eq!(entries.len(), size * size);
        debug_assert!(entries.iter().all(|e| e.field() == field && e.nvars() == nvars));
        PolyMatrix { field, nvars, size, entries }
    }

    /// `sum_k x^{monos[k]} · mats[k]`.
    pub fn from_coefficients(field: FieldSpec, monos: &[Monomial], mats: &[Matrix]) -> Self {
        let nvars = monos.first().map_or(0, Monomial::arity);
        let size = mats.first().map_or(0, Matrix::rows);
        let mut entries = Vec::with_capacity(size * size);
        for i in 0..size {
            for j in 0..size {
                let terms = monos.iter().zip(mats).map(|(m, a)| (m.clone(), a.get(i, j).clone()));
                entries.push(CPoly::from_terms(field, nvars, terms).expect("consistent arity"));
            }
        }
        PolyMatrix { field, nvars, size, entries }
    }

    pub fn field(&self) -> FieldSpec {
        self.field
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn size(&self) -> usize {
        self.size
    }

    pub fn get(&self, i: usize, j: usize) -> &CPoly {
        &self.entries[i * self.size + j]
    }

    pub fn entries(&self) -> &[CPoly] {
        &self.entries
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(CPoly::is_zero)
    }

    pub fn add(&self, other: &PolyMatrix) -> Result<PolyMatrix> {
        let entries = self
            .entries
            .iter()
            .zip(&other.entries)
            .map(|(a, b)| a.add(b))
            .collect::<Result<Vec<_>>>()?;
        Ok(PolyMatrix { entries, ..self.clone_shape() })
    }

    pub fn sub(&self, other: &PolyMatrix) -> Result<PolyMatrix> {
        let entries = self
            .entries
            .iter()
            .zip(&other.entries)
            .map(|(a, b)| a.sub(b))
            .collect::<Result<Vec<_>>>()?;
        Ok(PolyMatrix { entries, ..self.clone_shape() })
    }

    fn clone_shape(&self) -> PolyMatrix {
        PolyMatrix { field: self.field, nvars: self.nvars, size: self.size, entries: Vec::new() }
    }

    pub fn mul(&self, other: &PolyMatrix) -> Result<PolyMatrix> {
        let n = self.size;
        let mut out = PolyMatrix::zero(self.field, self.nvars, n);
        for i in 0..n {
            for k in 0..n {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..n {
                    let b = other.get(k, j);
                    if b.is_zero() {
                        continue;
                    }
                    let idx = i * n + j;
                    out.entries[idx] = out.entries[idx].add(&a.mul(b)?)?;
                }
            }
        }
        Ok(out)
    }

    /// Binary powering.
    pub fn pow(&self, mut e: u32) -> Result<PolyMatrix> {
        let mut acc = PolyMatrix::identity(self.field, self.nvars, self.size);
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

    /// Scalar matrix of the coefficients of `x^mono`.
    pub fn coefficient_matrix(&self, mono: &Monomial) -> Matrix {
        let mut m = Matrix::zero(self.field, self.size, self.size);
        for i in 0..self.size {
            for j in 0..self.size {
                m.set(i, j, self.get(i, j).coefficient(mono));
            }
        }
        m
    }

    /// Smallest monomial with a nonzero coefficient anywhere, and the first
    /// row-major entry carrying it.
    pub fn first_nonzero(&self) -> Option<EntryWitness> {
        let monos: BTreeSet<&Monomial> =
            self.entries.iter().flat_map(|e| e.terms().map(|(m, _)| m)).collect();
        let mono = *monos.iter().next()?;
        for (idx, e) in self.entries.iter().enumerate() {
            let c = e.coefficient(mono);
            if !c.is_zero() {
                return Some(EntryWitness {
                    monomial: mono.clone(),
                    row: idx / self.size,
                    col: idx % self.size,
                    value: c,
                });
            }
        }
        None
    }
}

/// `M^d - sum_{l=1..d} M^{d-l} f_{lm}`; zero exactly when `M` satisfies the
/// hypersurface equation. The top power uses binary powering, the lower sum
/// a Horner scheme.
pub fn hypersurface_residual(spec: &FormSpec, m: &PolyMatrix) -> Result<PolyMatrix> {
    let size = m.size();
    let d = spec.d() as usize;
    let top = m.pow(spec.d())?;
    let mut lower = PolyMatrix::scalar(spec.form(1), size);
    for ell in 2..=d {
        lower = lower.mul(m)?.add(&PolyMatrix::scalar(spec.form(ell), size))?;
    }
    top.sub(&lower)
}
