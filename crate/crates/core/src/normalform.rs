//! Degree-truncated two-sided rewriting for `k<a_J> / I`.
//!
//! Relations are oriented by the degree-lexicographic word order into rules
//! `lead -> tail` and completed by resolving overlap ambiguities. Every
//! ambiguity whose overlap word has length at most the truncation bound is
//! resolved; longer ones are never formed. Words are processed in order of
//! increasing overlap length, FIFO within a length.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::linalg::Matrix;
use crate::ncpoly::{NcPoly, Word};
use crate::presentation::Presentation;
use crate::scalar::{FieldSpec, Scalar};

pub const DEFAULT_RULE_CAP: usize = 200_000;

/// `lead -> lead - poly`, stored as the monic polynomial `poly` whose
/// leading word is `lead`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Rule {
    lead: Word,
    poly: NcPoly,
}

impl Rule {
    fn new(poly: NcPoly) -> Self {
        let lead = poly.leading_term().expect("nonzero rule").0.clone();
        Rule { lead, poly }
    }

    pub fn lead(&self) -> &Word {
        &self.lead
    }

    /// The monic ideal element `lead - tail`.
    pub fn poly(&self) -> &NcPoly {
        &self.poly
    }

    /// The right-hand side: what the leading word rewrites to.
    pub fn tail(&self) -> NcPoly {
        let f = self.poly.field();
        let terms =
            self.poly.terms().filter(|(w, _)| **w != self.lead).map(|(w, c)| (w.clone(), f.neg(c)));
        NcPoly::from_terms(f, terms).expect("field-consistent terms")
    }
}

/// Lookup structure for rewriting with a fixed rule list.
#[derive(Clone, Debug, Default)]
struct LeadIndex {
    by_lead: BTreeMap<Vec<u32>, usize>,
    lengths: BTreeSet<usize>,
}

impl LeadIndex {
    fn insert(&mut self, lead: &Word, id: usize) {
        self.by_lead.insert(lead.0.clone(), id);
        self.lengths.insert(lead.len());
    }

    fn remove(&mut self, lead: &Word) {
        self.by_lead.remove(&lead.0);
        let len = lead.len();
        if !self.by_lead.keys().any(|k| k.len() == len) {
            self.lengths.remove(&len);
        }
    }

    /// Leftmost, then shortest, occurrence of any lead inside `w`.
    fn find(&self, w: &[u32]) -> Option<(usize, usize)> {
        for start in 0..=w.len() {
            for &len in &self.lengths {
                if start + len > w.len() {
                    break;
                }
                if let Some(&id) = self.by_lead.get(&w[start..start + len]) {
                    return Some((id, start));
                }
            }
        }
        None
    }

    /// Whether some lead is a suffix of `w`.
    fn has_suffix(&self, w: &[u32]) -> bool {
        self.lengths
            .iter()
            .take_while(|&&len| len <= w.len())
            .any(|&len| self.by_lead.contains_key(&w[w.len() - len..]))
    }
}

/// Fully reduces `p` using `rules` (indexed by `index`).
fn reduce_with(field: FieldSpec, rules: &[Option<Rule>], index: &LeadIndex, p: NcPoly) -> NcPoly {
    let mut todo = p.into_map();
    let mut done = BTreeMap::new();
    while let Some((w, c)) = todo.pop_last() {
        match index.find(&w.0) {
            None => {
                done.insert(w, c);
            }
            Some((id, start)) => {
                let rule = rules[id].as_ref().expect("indexed rules are alive");
                let left = &w.0[..start];
                let right = &w.0[start + rule.lead.len()..];
                let minus_c = field.neg(&c);
                for (tw, tc) in rule.poly.terms() {
                    if *tw == rule.lead {
                        continue;
                    }
                    let key = tw.sandwich(left, right);
                    crate::cpoly::accumulate(&field, &mut todo, key, field.mul(&minus_c, tc));
                }
            }
        }
    }
    NcPoly::from_map(field, done)
}

/// Overlaps `a = u s`, `b = s t` with `s` nonempty and proper in both;
/// yields `|s|`.
fn overlap_lengths<'a>(a: &'a Word, b: &'a Word) -> impl Iterator<Item = usize> + 'a {
    let max = a.len().min(b.len());
    (1..max).filter(move |&k| a.0[a.len() - k..] == b.0[..k])
}

/// `S = poly_a · t - u · poly_b` for the overlap `u s t` of two rules.
fn s_polynomial(a: &Rule, b: &Rule, k: usize) -> NcPoly {
    let f = a.poly.field();
    let u = &a.lead.0[..a.lead.len() - k];
    let t = &b.lead.0[k..];
    let one = f.one();
    let lhs = a.poly.sandwich(&one, &[], t);
    let rhs = b.poly.sandwich(&one, u, &[]);
    lhs.sub(&rhs).expect("same field")
}

#[derive(Debug)]
enum Pending {
    Poly(NcPoly),
    Pair { a: usize, b: usize, k: usize },
}

/// A truncated, confluent rewriting system for a presentation.
#[derive(Clone, Debug)]
pub struct RewriteSystem {
    presentation: Presentation,
    bound: usize,
    complete_below: usize,
    rules: Vec<Rule>,
    index: LeadIndex,
    rules_opt: Vec<Option<Rule>>,
}

/// Dimensions of the filtered pieces `F_t` (words of length at most `t`).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FilteredDims {
    pub dims: Vec<usize>,
    /// `stable[t]` holds when completion was quiescent through degree `t + 2`.
    pub stable: Vec<bool>,
}

impl FilteredDims {
    /// The common value of the last two stable entries, if they agree.
    pub fn stabilized_total(&self) -> Option<usize> {
        let last = self.stable.iter().rposition(|&s| s)?;
        if last == 0 {
            return (self.dims[0] == 0).then_some(0);
        }
        (self.dims[last] == self.dims[last - 1]).then_some(self.dims[last])
    }
}

pub fn truncated_completion(pres: &Presentation, bound: usize) -> Result<RewriteSystem> {
    truncated_completion_with_cap(pres, bound, DEFAULT_RULE_CAP)
}

pub fn truncated_completion_with_cap(
    pres: &Presentation,
    bound: usize,
    rule_cap: usize,
) -> Result<RewriteSystem> {
    let field = pres.field();
    let d = pres.spec().d() as usize;
    let top = pres.relation_polys().filter_map(NcPoly::degree).max().unwrap_or(0);
    if bound < d.max(top) {
        return Err(Error::DegreeAboveBound { degree: d.max(top), bound });
    }

    let mut rules: Vec<Option<Rule>> = Vec::new();
    let mut index = LeadIndex::default();
    let mut alive = 0usize;
    let mut queue: BTreeMap<(usize, u64), Pending> = BTreeMap::new();
    let mut seq = 0u64;
    let mut push = |queue: &mut BTreeMap<(usize, u64), Pending>, deg: usize, item: Pending| {
        queue.insert((deg, seq), item);
        seq += 1;
    };

    for r in pres.relation_polys() {
        push(&mut queue, r.degree().unwrap_or(0), Pending::Poly(r.clone()));
    }

    while let Some(((deg, _), item)) = queue.pop_first() {
        let candidate = match item {
            Pending::Poly(p) => p,
            Pending::Pair { a, b, k } => match (&rules[a], &rules[b]) {
                (Some(ra), Some(rb)) => s_polynomial(ra, rb, k),
                _ => continue,
            },
        };
        let reduced = reduce_with(field, &rules, &index, candidate);
        if reduced.is_zero() {
            continue;
        }
        if alive >= rule_cap {
            let pending_min = queue.keys().next().map_or(deg, |(d, _)| *d).min(deg);
            return Err(Error::BudgetExceeded {
                cap: rule_cap,
                completed_below: pending_min.saturating_sub(1),
            });
        }
        let rule = Rule::new(reduced.monic());

        // Older rules whose lead contains the new lead are retired and their
        // polynomials re-enter the queue.
        let retired: Vec<usize> = rules
            .iter()
            .enumerate()
            .filter_map(|(i, r)| {
                r.as_ref().filter(|r| r.lead.find(&rule.lead.0).is_some()).map(|_| i)
            })
            .collect();
        for i in retired {
            let old = rules[i].take().expect("alive");
            index.remove(&old.lead);
            alive -= 1;
            push(&mut queue, old.lead.len(), Pending::Poly(old.poly));
        }

        let id = rules.len();
        index.insert(&rule.lead, id);
        rules.push(Some(rule));
        alive += 1;

        let new = rules[id].as_ref().expect("just inserted");
        for (j, other) in rules.iter().enumerate() {
            let Some(other) = other else { continue };
            for k in overlap_lengths(&new.lead, &other.lead) {
                let len = new.lead.len() + other.lead.len() - k;
                if len <= bound {
                    push(&mut queue, len, Pending::Pair { a: id, b: j, k });
                }
            }
            if j != id {
                for k in overlap_lengths(&other.lead, &new.lead) {
                    let len = new.lead.len() + other.lead.len() - k;
                    if len <= bound {
                        push(&mut queue, len, Pending::Pair { a: j, b: id, k });
                    }
                }
            }
        }
    }

    // Interreduce tails so the rule set is canonical.
    let live: Vec<Rule> = rules.into_iter().flatten().collect();
    let mut index = LeadIndex::default();
    let opts: Vec<Option<Rule>> = live.iter().cloned().map(Some).collect();
    for (i, r) in live.iter().enumerate() {
        index.insert(&r.lead, i);
    }
    let mut finished: Vec<Rule> = Vec::with_capacity(live.len());
    for r in &live {
        let tail_reduced = reduce_with(field, &opts, &index, r.tail());
        let lead = NcPoly::term(field, r.lead.clone(), field.one());
        finished.push(Rule::new(lead.sub(&tail_reduced).expect("same field")));
    }
    finished.sort_by(|a, b| a.lead.cmp(&b.lead));

    Ok(RewriteSystem::from_rules(pres.clone(), bound, bound, finished))
}

impl RewriteSystem {
    fn from_rules(
        presentation: Presentation,
        bound: usize,
        complete_below: usize,
        rules: Vec<Rule>,
    ) -> Self {
        let mut index = LeadIndex::default();
        for (i, r) in rules.iter().enumerate() {
            index.insert(&r.lead, i);
        }
        let rules_opt = rules.iter().cloned().map(Some).collect();
        RewriteSystem { presentation, bound, complete_below, rules, index, rules_opt }
    }

    pub fn presentation(&self) -> &Presentation {
        &self.presentation
    }

    pub fn field(&self) -> FieldSpec {
        self.presentation.field()
    }

    pub fn bound(&self) -> usize {
        self.bound
    }

    pub fn complete_below(&self) -> usize {
        self.complete_below
    }

    /// Rules sorted by leading word.
    pub fn rules(&self) -> &[Rule] {
        &self.rules
    }

    pub fn is_irreducible(&self, w: &Word) -> bool {
        self.index.find(&w.0).is_none()
    }

    /// Reduction without the degree guard.
    fn reduce(&self, p: NcPoly) -> NcPoly {
        reduce_with(self.field(), &self.rules_opt, &self.index, p)
    }

    /// Unique reduced representative of `p` modulo the ideal; refuses inputs
    /// above the completed degree.
    pub fn normal_form(&self, p: &NcPoly) -> Result<NcPoly> {
        if p.field() != self.field() {
            return Err(Error::FieldMismatch);
        }
        let g = self.presentation.generator_count() as u32;
        if p.max_letter().is_some_and(|l| l >= g) {
            return Err(Error::InvalidForm("word uses an unknown generator".into()));
        }
        let degree = p.degree().unwrap_or(0);
        if degree > self.complete_below {
            return Err(Error::DegreeAboveBound { degree, bound: self.complete_below });
        }
        Ok(self.reduce(p.clone()))
    }

    /// Irreducible words of length at most `max_len`, ascending.
    pub fn irreducible_words(&self, max_len: usize) -> Vec<Word> {
        let g = self.presentation.generator_count() as u32;
        let mut out = Vec::new();
        if !self.is_irreducible(&Word::empty()) {
            return out;
        }
        out.push(Word::empty());
        let mut frontier = alloc::vec![Word::empty()];
        for _ in 0..max_len {
            let mut next = Vec::new();
            for w in &frontier {
                for a in 0..g {
                    let mut letters = w.0.clone();
                    letters.push(a);
                    if !self.index.has_suffix(&letters) {
                        next.push(Word(letters));
                    }
                }
            }
            next.sort();
            out.extend(next.iter().cloned());
            frontier = next;
        }
        out
    }

    /// Number of irreducible words of length at most `t`, for `t = 0..=bound`.
    pub fn filtered_dimension(&self) -> FilteredDims {
        let words = self.irreducible_words(self.bound);
        let mut dims = alloc::vec![0usize; self.bound + 1];
        for w in &words {
            dims[w.len()] += 1;
        }
        for t in 1..dims.len() {
            dims[t] += dims[t - 1];
        }
        let stable = (0..=self.bound).map(|t| t + 2 <= self.complete_below).collect();
        FilteredDims { dims, stable }
    }

    /// Basis of the elements of `F_t` that commute with every generator in
    /// the quotient, in reduced form.
    pub fn center_basis(&self, t: usize) -> Result<Vec<NcPoly>> {
        if t + 1 > self.complete_below {
            return Err(Error::DegreeAboveBound { degree: t + 1, bound: self.complete_below });
        }
        let field = self.field();
        let basis = self.irreducible_words(t);
        if basis.is_empty() {
            return Ok(Vec::new());
        }
        let g = self.presentation.generator_count() as u32;

        // Column per basis word, row per (generator, target word).
        let mut row_of: BTreeMap<(u32, Word), usize> = BTreeMap::new();
        let mut entries: Vec<(usize, usize, Scalar)> = Vec::new();
        for (col, w) in basis.iter().enumerate() {
            for a in 0..g {
                let wa = NcPoly::term(field, w.concat(&Word::letter(a)), field.one());
                let aw = NcPoly::term(field, Word::letter(a).concat(w), field.one());
                let comm = self.reduce(wa.sub(&aw).expect("same field"));
                for (tw, c) in comm.terms() {
                    let next = row_of.len();
                    let row = *row_of.entry((a, tw.clone())).or_insert(next);
                    entries.push((row, col, c.clone()));
                }
            }
        }
        let mut m = Matrix::zero(field, row_of.len(), basis.len());
        for (r, c, v) in entries {
            m.set(r, c, v);
        }
        let kernel = m.kernel();
        Ok(kernel
            .into_iter()
            .map(|v| {
                let terms = basis.iter().cloned().zip(v);
                NcPoly::from_terms(field, terms).expect("field-consistent terms")
            })
            .collect())
    }

    /// Checks that every overlap of rule leads with overlap word of length at
    /// most `upto` resolves to zero, and that no lead contains another.
    /// Returns the first offending overlap word.
    pub fn confluence_audit(&self, upto: usize) -> core::result::Result<(), Word> {
        for a in &self.rules {
            for b in &self.rules {
                if a.lead != b.lead && a.lead.find(&b.lead.0).is_some() {
                    return Err(a.lead.clone());
                }
                for k in overlap_lengths(&a.lead, &b.lead) {
                    if a.lead.len() + b.lead.len() - k > upto {
                        continue;
                    }
                    let s = s_polynomial(a, b, k);
                    if !self.reduce(s).is_zero() {
                        let mut w = a.lead.0.clone();
                        w.extend_from_slice(&b.lead.0[k..]);
                        return Err(Word(w));
                    }
                }
            }
        }
        Ok(())
    }
}
