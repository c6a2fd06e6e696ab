//! Matrix representations of Clifford presentations.
//!
//! A representation assigns a square matrix `A_J` to every generator `a_J`.
//! It is valid when `M(x) = sum_J A_J x^J` satisfies the hypersurface
//! equation, or equivalently when every relation evaluates to zero; both
//! checks are run and must agree.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::vec::Vec;
use core::ops::Range;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::cpoly::Monomial;
use crate::error::{Error, Result};
use crate::linalg::{Matrix, SpanBuilder};
use crate::ncpoly::Word;
use crate::polymatrix::{hypersurface_residual, EntryWitness, PolyMatrix};
use crate::presentation::{clifford_relations, generators, FormSpec, Presentation};
use crate::scalar::{add_mod, mul_mod, FieldSpec};

/// Default bound on the number of candidate tuples in exhaustive mode.
pub const DEFAULT_CANDIDATE_CAP: u64 = 1 << 26;

/// One matrix per generator, in generator order.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct MatrixRep {
    spec: FormSpec,
    size: usize,
    matrices: Vec<Matrix>,
}

impl MatrixRep {
    pub fn new(spec: FormSpec, matrices: Vec<Matrix>) -> Result<Self> {
        let g = generators(&spec).len();
        if matrices.len() != g {
            return Err(Error::InvalidRep(format!(
                "expected {g} matrices, got {}",
                matrices.len()
            )));
        }
        let size = matrices[0].rows();
        for (i, a) in matrices.iter().enumerate() {
            if a.field() != spec.field() {
                return Err(Error::FieldMismatch);
            }
            if !a.is_square() || a.rows() != size {
                return Err(Error::InvalidRep(format!(
                    "matrix {i} is {}x{}, expected {size}x{size}",
                    a.rows(),
                    a.cols()
                )));
            }
        }
        if size == 0 {
            return Err(Error::InvalidRep("matrices of size zero".into()));
        }
        Ok(MatrixRep { spec, size, matrices })
    }

    pub fn spec(&self) -> &FormSpec {
        &self.spec
    }

    pub fn size(&self) -> usize {
        self.size
    }

    pub fn matrices(&self) -> &[Matrix] {
        &self.matrices
    }

    /// `M(x) = sum_J A_J x^J`.
    pub fn action_matrix(&self) -> PolyMatrix {
        PolyMatrix::from_coefficients(self.spec.field(), &generators(&self.spec), &self.matrices)
    }

    /// `P A_J P^{-1}` for every generator.
    pub fn conjugate(&self, p: &Matrix) -> Result<MatrixRep> {
        let inv = p
            .inverse()
            .ok_or_else(|| Error::InvalidRep("conjugating matrix is singular".into()))?;
        if p.rows() != self.size {
            return Err(Error::InvalidRep("conjugator has the wrong size".into()));
        }
        let matrices = self.matrices.iter().map(|a| p.mul(a).mul(&inv)).collect();
        MatrixRep::new(self.spec.clone(), matrices)
    }
}

/// Outcome of [`verify_rep`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Verification {
    pub valid: bool,
    /// First nonzero coefficient of the matrix identity, when invalid.
    pub witness: Option<EntryWitness>,
    /// Slot of the first relation that does not vanish, when invalid.
    pub failing_relation: Option<Monomial>,
}

/// Checks the matrix identity `M^d = sum M^{d-l} f_{lm}`.
pub fn verify_by_identity(rep: &MatrixRep) -> Result<Option<EntryWitness>> {
    let residual = hypersurface_residual(&rep.spec, &rep.action_matrix())?;
    Ok(residual.first_nonzero())
}

/// Evaluates every relation on the matrices; returns the slot of the first
/// one that does not vanish.
pub fn verify_by_relations(rep: &MatrixRep, pres: &Presentation) -> Option<Monomial> {
    let field = rep.spec.field();
    let mut products: BTreeMap<Word, Matrix> = BTreeMap::new();
    products.insert(Word::empty(), Matrix::identity(field, rep.size));
    for rel in pres.relations() {
        let mut total = Matrix::zero(field, rep.size, rep.size);
        for (w, c) in rel.poly.terms() {
            let prod = word_product(&mut products, &rep.matrices, w);
            total.add_scaled(c, &prod);
        }
        if !total.is_zero() {
            return Some(rel.monomial.clone());
        }
    }
    None
}

fn word_product(cache: &mut BTreeMap<Word, Matrix>, mats: &[Matrix], w: &Word) -> Matrix {
    if let Some(m) = cache.get(w) {
        return m.clone();
    }
    let (last, prefix) = w.0.split_last().expect("empty word is cached");
    let head = word_product(cache, mats, &Word(prefix.to_vec()));
    let m = head.mul(&mats[*last as usize]);
    cache.insert(w.clone(), m.clone());
    m
}

/// Runs both verification routes; they must agree.
pub fn verify_rep(rep: &MatrixRep) -> Result<Verification> {
    let pres = clifford_relations(&rep.spec)?;
    verify_with(rep, &pres)
}

fn verify_with(rep: &MatrixRep, pres: &Presentation) -> Result<Verification> {
    let witness = verify_by_identity(rep)?;
    let failing_relation = verify_by_relations(rep, pres);
    if witness.is_some() != failing_relation.is_some() {
        return Err(Error::RouteDisagreement);
    }
    Ok(Verification { valid: witness.is_none(), witness, failing_relation })
}

/// Every representation has size divisible by `d`.
pub fn check_rank_divisibility(size: usize, spec: &FormSpec) -> bool {
    size.is_multiple_of(spec.d() as usize)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SearchMode {
    Exhaustive,
    Random { seed: u64, trials: u64 },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SearchOptions {
    /// Largest candidate count allowed in exhaustive mode.
    pub cap: u64,
    /// Over the rationals, random entries are integers in `[-r, r]`.
    pub rational_range: i64,
}

impl Default for SearchOptions {
    fn default() -> Self {
        SearchOptions { cap: DEFAULT_CANDIDATE_CAP, rational_range: 2 }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SearchReport {
    pub spec: FormSpec,
    pub size: usize,
    pub field: FieldSpec,
    pub mode: SearchMode,
    pub cap: u64,
    /// Number of candidate tuples examined.
    pub examined: u64,
    pub found: Vec<MatrixRep>,
    /// True only when exhaustive mode enumerated the whole candidate space.
    pub exhausted: bool,
}

/// Relation evaluation over `F_p` on flat `u64` matrices, sharing word
/// prefixes between relations.
#[derive(Clone, Debug)]
struct PrimeEvaluator {
    p: u64,
    n: usize,
    /// `(parent product index, letter)`; index 0 is the identity.
    steps: Vec<(usize, usize)>,
    /// Per relation, `(product index, coefficient)`.
    relations: Vec<Vec<(usize, u64)>>,
}

impl PrimeEvaluator {
    fn new(pres: &Presentation, p: u64, n: usize) -> Self {
        let field = pres.field();
        let mut ids: BTreeMap<Vec<u32>, usize> = BTreeMap::new();
        ids.insert(Vec::new(), 0);
        let mut steps = alloc::vec![(0, 0)];
        let mut words: Vec<&Word> =
            pres.relation_polys().flat_map(|r| r.terms().map(|t| t.0)).collect();
        words.sort();
        for w in words {
            for k in 1..=w.len() {
                if !ids.contains_key(&w.0[..k]) {
                    let parent = ids[&w.0[..k - 1]];
                    ids.insert(w.0[..k].to_vec(), steps.len());
                    steps.push((parent, w.0[k - 1] as usize));
                }
            }
        }
        let relations = pres
            .relation_polys()
            .map(|r| r.terms().map(|(w, c)| (ids[&w.0], field.residue(c))).collect())
            .collect();
        PrimeEvaluator { p, n, steps, relations }
    }

    /// `mats` holds one flat `n*n` matrix per generator.
    fn satisfies(&self, mats: &[Vec<u64>], scratch: &mut Vec<Vec<u64>>) -> bool {
        let (p, n) = (self.p, self.n);
        scratch.resize(self.steps.len(), alloc::vec![0; n * n]);
        let id = &mut scratch[0];
        id.iter_mut().for_each(|x| *x = 0);
        for i in 0..n {
            id[i * n + i] = 1 % p;
        }
        for (idx, &(parent, letter)) in self.steps.iter().enumerate().skip(1) {
            let (done, rest) = scratch.split_at_mut(idx);
            let out = &mut rest[0];
            let a = &done[parent];
            let b = &mats[letter];
            for i in 0..n {
                for j in 0..n {
                    let mut s = 0u64;
                    for k in 0..n {
                        s = add_mod(s, mul_mod(a[i * n + k], b[k * n + j], p), p);
                    }
                    out[i * n + j] = s;
                }
            }
        }
        self.relations.iter().all(|rel| {
            (0..n * n).all(|e| {
                rel.iter()
                    .fold(0u64, |acc, &(idx, c)| add_mod(acc, mul_mod(c, scratch[idx][e], p), p))
                    == 0
            })
        })
    }
}

/// The exhaustive candidate space for one size over a prime field.
///
/// Candidates are tuples of matrices enumerated row-major lexicographically:
/// entries are read matrix by matrix, each in row-major order, and the first
/// entry is the most significant digit.
#[derive(Clone, Debug)]
pub struct ExhaustiveSearch {
    spec: FormSpec,
    pres: Presentation,
    size: usize,
    p: u64,
    generators: usize,
    total: u64,
    evaluator: PrimeEvaluator,
}

impl ExhaustiveSearch {
    pub fn new(spec: &FormSpec, size: usize, cap: u64) -> Result<Self> {
        let p = match spec.field() {
            FieldSpec::Prime(p) => p,
            FieldSpec::Rationals => return Err(Error::ExhaustiveOverRationals),
        };
        if size == 0 {
            return Err(Error::InvalidRep("size must be positive".into()));
        }
        let pres = clifford_relations(spec)?;
        let g = pres.generator_count();
        let digits = (g * size * size) as u32;
        let total = p.checked_pow(digits).filter(|&t| t <= cap).ok_or_else(|| {
            Error::CandidateSpaceTooLarge { candidates: format!("{p}^{digits}"), cap }
        })?;
        let evaluator = PrimeEvaluator::new(&pres, p, size);
        Ok(ExhaustiveSearch { spec: spec.clone(), pres, size, p, generators: g, total, evaluator })
    }

    pub fn total(&self) -> u64 {
        self.total
    }

    fn decode(&self, mut index: u64, digits: &mut [u64]) {
        for d in digits.iter_mut().rev() {
            *d = index % self.p;
            index /= self.p;
        }
    }

    fn to_rep(&self, digits: &[u64]) -> MatrixRep {
        let f = self.spec.field();
        let nn = self.size * self.size;
        let matrices = digits
            .chunks(nn)
            .map(|chunk| {
                let rows = chunk
                    .chunks(self.size)
                    .map(|r| r.iter().map(|&v| crate::scalar::Scalar::Residue(v)).collect())
                    .collect();
                Matrix::from_rows(f, rows).expect("residues in range")
            })
            .collect();
        MatrixRep { spec: self.spec.clone(), size: self.size, matrices }
    }

    /// Scans candidate indices in `range` and returns the valid ones with
    /// their indices, in enumeration order.
    pub fn scan(&self, range: Range<u64>) -> Result<Vec<(u64, MatrixRep)>> {
        let nn = self.size * self.size;
        let mut digits = alloc::vec![0u64; self.generators * nn];
        let mut scratch = Vec::new();
        let mut found = Vec::new();
        let end = range.end.min(self.total);
        if range.start >= end {
            return Ok(found);
        }
        self.decode(range.start, &mut digits);
        let mut mats: Vec<Vec<u64>> = digits.chunks(nn).map(<[u64]>::to_vec).collect();
        for index in range.start..end {
            if self.evaluator.satisfies(&mats, &mut scratch) {
                let rep = self.to_rep(&digits);
                if !verify_with(&rep, &self.pres)?.valid {
                    return Err(Error::RouteDisagreement);
                }
                found.push((index, rep));
            }
            // Odometer step, last digit least significant.
            for pos in (0..digits.len()).rev() {
                digits[pos] += 1;
                let wrapped = digits[pos] == self.p;
                if wrapped {
                    digits[pos] = 0;
                }
                mats[pos / nn][pos % nn] = digits[pos];
                if !wrapped {
                    break;
                }
            }
        }
        Ok(found)
    }
}

/// Single-threaded search. Random mode draws each candidate entry uniformly
/// from the field (from an integer box over the rationals) using a ChaCha8
/// stream seeded with `seed`.
pub fn search_reps(
    spec: &FormSpec,
    size: usize,
    mode: SearchMode,
    options: SearchOptions,
) -> Result<SearchReport> {
    match mode {
        SearchMode::Exhaustive => {
            let search = ExhaustiveSearch::new(spec, size, options.cap)?;
            let found = search.scan(0..search.total())?.into_iter().map(|(_, r)| r).collect();
            Ok(SearchReport {
                spec: spec.clone(),
                size,
                field: spec.field(),
                mode,
                cap: options.cap,
                examined: search.total(),
                found,
                exhausted: true,
            })
        }
        SearchMode::Random { seed, trials } => random_search(spec, size, seed, trials, options),
    }
}

fn random_search(
    spec: &FormSpec,
    size: usize,
    seed: u64,
    trials: u64,
    options: SearchOptions,
) -> Result<SearchReport> {
    if size == 0 {
        return Err(Error::InvalidRep("size must be positive".into()));
    }
    let field = spec.field();
    let pres = clifford_relations(spec)?;
    let g = pres.generator_count();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut found: Vec<MatrixRep> = Vec::new();
    let evaluator = match field {
        FieldSpec::Prime(p) => Some(PrimeEvaluator::new(&pres, p, size)),
        FieldSpec::Rationals => None,
    };
    let r = options.rational_range.max(0);
    let mut scratch = Vec::new();
    for _ in 0..trials {
        let mut flat: Vec<Vec<u64>> = Vec::with_capacity(g);
        let mut matrices = Vec::with_capacity(g);
        for _ in 0..g {
            let mut rows = Vec::with_capacity(size);
            let mut raw = Vec::with_capacity(size * size);
            for _ in 0..size {
                let mut row = Vec::with_capacity(size);
                for _ in 0..size {
                    let s = match field {
                        FieldSpec::Prime(p) => {
                            let v = rng.random_range(0..p);
                            raw.push(v);
                            crate::scalar::Scalar::Residue(v)
                        }
                        FieldSpec::Rationals => field.from_i64(rng.random_range(-r..=r)),
                    };
                    row.push(s);
                }
                rows.push(row);
            }
            flat.push(raw);
            matrices.push(Matrix::from_rows(field, rows)?);
        }
        let rep = MatrixRep { spec: spec.clone(), size, matrices };
        let hit = match &evaluator {
            Some(ev) => ev.satisfies(&flat, &mut scratch),
            None => verify_by_relations(&rep, &pres).is_none(),
        };
        if hit {
            if !verify_with(&rep, &pres)?.valid {
                return Err(Error::RouteDisagreement);
            }
            if !found.contains(&rep) {
                found.push(rep);
            }
        }
    }
    Ok(SearchReport {
        spec: spec.clone(),
        size,
        field,
        mode: SearchMode::Random { seed, trials },
        cap: options.cap,
        examined: trials,
        found,
        exhausted: false,
    })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SpecializationReport {
    /// The matrices generate the full matrix algebra.
    pub surjective: bool,
    pub span_dimension: usize,
    /// Longest word length that contributed to the span.
    pub word_length: usize,
}

/// Burnside test: grows the span of products of the `A_J` by word length
/// until it stops growing or reaches `N^2` (length capped at `N^2`).
pub fn is_specialization(rep: &MatrixRep) -> Result<SpecializationReport> {
    if !verify_rep(rep)?.valid {
        return Err(Error::UnverifiedRep);
    }
    let n = rep.size;
    let field = rep.spec.field();
    let mut span = SpanBuilder::new(field, n * n);
    let id = Matrix::identity(field, n);
    span.insert(id.entries());
    let mut frontier = alloc::vec![id];
    let mut word_length = 0;
    for len in 1..=n * n {
        if span.is_full() {
            break;
        }
        let mut next = Vec::new();
        for m in &frontier {
            for a in &rep.matrices {
                let prod = m.mul(a);
                if span.insert(prod.entries()) {
                    next.push(prod);
                }
            }
        }
        if next.is_empty() {
            break;
        }
        word_length = len;
        frontier = next;
    }
    Ok(SpecializationReport {
        surjective: span.is_full(),
        span_dimension: span.rank(),
        word_length,
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ReducedCheck {
    pub compatible: bool,
    /// Set when `N > d`: only the divisibility consequence was checked.
    pub divisibility_gate_only: bool,
}

/// Whether the representation factors through the quotient by the
/// polynomial identities of `d x d` matrices. Exact for `N = d`; for larger
/// sizes only divisibility by `d` is checked.
pub fn reduced_compatible(rep: &MatrixRep) -> Result<ReducedCheck> {
    if !verify_rep(rep)?.valid {
        return Err(Error::UnverifiedRep);
    }
    let d = rep.spec.d() as usize;
    Ok(match rep.size {
        n if n == d => ReducedCheck { compatible: true, divisibility_gate_only: false },
        n if n % d == 0 => ReducedCheck { compatible: true, divisibility_gate_only: true },
        _ => ReducedCheck { compatible: false, divisibility_gate_only: true },
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::presentation::roby;
    use crate::text::{parse_poly, x_names};
    use alloc::vec;

    fn cubic_f7() -> FormSpec {
        let f = FieldSpec::prime(7).unwrap();
        roby(&parse_poly("x1^3 + x2^3", &x_names(2), f).unwrap(), 3).unwrap()
    }

    fn witness_rep(diag: [i64; 3]) -> MatrixRep {
        let spec = cubic_f7();
        let f = spec.field();
        let a1 =
            Matrix::from_i64(f, &[&[diag[0], 0, 0], &[0, diag[1], 0], &[0, 0, diag[2]]]).unwrap();
        // e1 -> e2 -> e3 -> e1
        let a2 = Matrix::from_i64(f, &[&[0, 0, 1], &[1, 0, 0], &[0, 1, 0]]).unwrap();
        MatrixRep::new(spec, vec![a1, a2]).unwrap()
    }

    #[test]
    fn cubic_witness_verifies() {
        let rep = witness_rep([1, 2, 4]);
        let v = verify_rep(&rep).unwrap();
        assert!(v.valid);
        let s = is_specialization(&rep).unwrap();
        assert!(s.surjective);
        assert_eq!(s.span_dimension, 9);
        assert_eq!(
            reduced_compatible(&rep).unwrap(),
            ReducedCheck { compatible: true, divisibility_gate_only: false }
        );
    }

    #[test]
    fn cubic_perturbation_has_x1_cubed_witness() {
        let rep = witness_rep([1, 2, 3]);
        let v = verify_rep(&rep).unwrap();
        assert!(!v.valid);
        let w = v.witness.unwrap();
        assert_eq!(w.monomial, Monomial(vec![3, 0]));
        assert_eq!((w.row, w.col), (2, 2));
        assert_eq!(v.failing_relation, Some(Monomial(vec![3, 0])));
        assert_eq!(is_specialization(&rep), Err(Error::UnverifiedRep));
    }

    #[test]
    fn square_roots_of_one_mod_3() {
        let f = FieldSpec::prime(3).unwrap();
        let spec = roby(&parse_poly("x1^2", &x_names(1), f).unwrap(), 2).unwrap();
        let report =
            search_reps(&spec, 1, SearchMode::Exhaustive, SearchOptions::default()).unwrap();
        assert!(report.exhausted);
        let found: Vec<_> =
            report.found.iter().map(|r| r.matrices()[0].get(0, 0).clone()).collect();
        assert_eq!(found, vec![f.from_i64(1), f.from_i64(2)]);
    }

    #[test]
    fn diagonal_rep_is_not_a_specialization() {
        let q = FieldSpec::Rationals;
        let spec = roby(&parse_poly("x1^2", &x_names(1), q).unwrap(), 2).unwrap();
        let a = Matrix::from_i64(q, &[&[1, 0], &[0, -1]]).unwrap();
        let rep = MatrixRep::new(spec.clone(), vec![a]).unwrap();
        let s = is_specialization(&rep).unwrap();
        assert!(!s.surjective);
        assert_eq!(s.span_dimension, 2);
        let one = MatrixRep::new(spec, vec![Matrix::from_i64(q, &[&[-1]]).unwrap()]).unwrap();
        assert!(is_specialization(&one).unwrap().surjective);
        let r = reduced_compatible(&rep).unwrap();
        assert!(r.compatible && !r.divisibility_gate_only);
    }

    #[test]
    fn divisibility_gate() {
        let spec = cubic_f7();
        assert!(check_rank_divisibility(3, &spec));
        assert!(!check_rank_divisibility(2, &spec));
        assert!(check_rank_divisibility(6, &spec));
    }

    #[test]
    fn caps_and_field_restrictions() {
        let spec = cubic_f7();
        assert!(matches!(
            search_reps(&spec, 3, SearchMode::Exhaustive, SearchOptions::default()),
            Err(Error::CandidateSpaceTooLarge { .. })
        ));
        let q = FieldSpec::Rationals;
        let qs = roby(&parse_poly("x1^2", &x_names(1), q).unwrap(), 2).unwrap();
        assert_eq!(
            search_reps(&qs, 1, SearchMode::Exhaustive, SearchOptions::default()).unwrap_err(),
            Error::ExhaustiveOverRationals
        );
    }

    #[test]
    fn random_mode_is_seeded() {
        let f = FieldSpec::prime(3).unwrap();
        let spec = roby(&parse_poly("x1^2", &x_names(1), f).unwrap(), 2).unwrap();
        let mode = SearchMode::Random { seed: 7, trials: 50 };
        let a = search_reps(&spec, 1, mode, SearchOptions::default()).unwrap();
        let b = search_reps(&spec, 1, mode, SearchOptions::default()).unwrap();
        assert_eq!(a, b);
        assert!(!a.exhausted);
        assert!(a.found.iter().all(|r| verify_rep(r).unwrap().valid));
    }

    #[test]
    fn block_diagonal_double_is_gate_only() {
        let rep = witness_rep([1, 2, 4]);
        let f = rep.spec().field();
        let double = |m: &Matrix| {
            let mut out = Matrix::zero(f, 6, 6);
            for i in 0..3 {
                for j in 0..3 {
                    out.set(i, j, m.get(i, j).clone());
                    out.set(i + 3, j + 3, m.get(i, j).clone());
                }
            }
            out
        };
        let big = MatrixRep::new(rep.spec().clone(), rep.matrices().iter().map(double).collect())
            .unwrap();
        assert!(verify_rep(&big).unwrap().valid);
        assert_eq!(
            reduced_compatible(&big).unwrap(),
            ReducedCheck { compatible: true, divisibility_gate_only: true }
        );
        assert!(!is_specialization(&big).unwrap().surjective);
    }
}
