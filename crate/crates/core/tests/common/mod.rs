//! Shared test support: a naive relation expander over `F_5` that uses only
//! plain maps and integer arithmetic, and random form generators.
#![allow(dead_code)]

use std::collections::BTreeMap;

use clifford_core::cpoly::{CPoly, Monomial};
use clifford_core::presentation::{FormSpec, Presentation};
use clifford_core::scalar::{FieldSpec, Scalar};
use rand::Rng;

pub const P: u64 = 5;

pub type Exps = Vec<u32>;

/// A form specification over `F_5` as plain data. `forms[l - 1]` maps
/// exponent vectors of degree `l * m` to nonzero residues.
#[derive(Clone, Debug)]
pub struct PlainSpec {
    pub n: usize,
    pub m: u32,
    pub d: u32,
    pub forms: Vec<BTreeMap<Exps, u64>>,
}

/// Relations keyed by x-exponent; each relation maps a word, written as the
/// list of its generators' exponent vectors, to a nonzero residue.
pub type PlainRelations = BTreeMap<Exps, BTreeMap<Vec<Exps>, u64>>;

pub fn exps_of_degree(n: usize, deg: u32) -> Vec<Exps> {
    let mut out = Vec::new();
    let mut cur = vec![0u32; n];
    loop {
        if cur.iter().sum::<u32>() == deg {
            out.push(cur.clone());
        }
        let mut i = 0;
        loop {
            if i == n {
                return out;
            }
            if cur[i] < deg {
                cur[i] += 1;
                break;
            }
            cur[i] = 0;
            i += 1;
        }
    }
}

/// Every length-`len` tuple over `0..k`.
fn tuples(k: usize, len: usize) -> Vec<Vec<usize>> {
    let mut out = vec![Vec::new()];
    for _ in 0..len {
        let mut next = Vec::new();
        for t in &out {
            for i in 0..k {
                let mut u = t.clone();
                u.push(i);
                next.push(u);
            }
        }
        out = next;
    }
    out
}

fn add_exps(a: &mut Exps, b: &[u32]) {
    for (x, y) in a.iter_mut().zip(b) {
        *x += y;
    }
}

/// Expands `(sum_J a_J x^J)^d - sum_l (sum_J a_J x^J)^{d-l} f_{lm}` term by
/// term and groups by x-exponent.
pub fn naive_relations(spec: &PlainSpec) -> PlainRelations {
    let gens = exps_of_degree(spec.n, spec.m);
    let d = spec.d as usize;
    let mut acc: BTreeMap<(Exps, Vec<Exps>), u64> = BTreeMap::new();
    for t in tuples(gens.len(), d) {
        let mut x = vec![0; spec.n];
        let word: Vec<Exps> = t.iter().map(|&i| gens[i].clone()).collect();
        for g in &word {
            add_exps(&mut x, g);
        }
        *acc.entry((x, word)).or_insert(0) += 1;
    }
    for ell in 1..=d {
        for t in tuples(gens.len(), d - ell) {
            for (fe, &c) in &spec.forms[ell - 1] {
                let mut x = fe.clone();
                let word: Vec<Exps> = t.iter().map(|&i| gens[i].clone()).collect();
                for g in &word {
                    add_exps(&mut x, g);
                }
                let e = acc.entry((x, word)).or_insert(0);
                *e = (*e + P - c % P) % P;
            }
        }
    }
    let mut out: PlainRelations = BTreeMap::new();
    for ((x, word), c) in acc {
        if c % P != 0 {
            out.entry(x).or_default().insert(word, c % P);
        }
    }
    out
}

/// The engine's relations in the same plain shape.
pub fn engine_relations(pres: &Presentation) -> PlainRelations {
    let gens = pres.generators();
    let field = pres.field();
    let mut out = PlainRelations::new();
    for rel in pres.relations() {
        let inner = out.entry(rel.monomial.0.clone()).or_default();
        for (w, c) in rel.poly.terms() {
            let word = w.0.iter().map(|&i| gens[i as usize].0.clone()).collect();
            inner.insert(word, field.residue(c));
        }
    }
    out
}

pub fn to_form_spec(spec: &PlainSpec) -> FormSpec {
    let field = FieldSpec::prime(P).unwrap();
    let forms = spec
        .forms
        .iter()
        .map(|f| {
            let terms = f.iter().map(|(e, &c)| (Monomial(e.clone()), Scalar::Residue(c)));
            CPoly::from_terms(field, spec.n, terms).unwrap()
        })
        .collect();
    FormSpec::new(field, spec.n, spec.m, spec.d, forms).unwrap()
}

/// `n <= 3`, `m <= 2`, `d <= 3`; each monomial of each form is present with
/// probability one half.
pub fn random_plain_spec<R: Rng>(rng: &mut R) -> PlainSpec {
    let n = rng.random_range(1..=3);
    let m = rng.random_range(1..=2);
    let d = rng.random_range(1..=3);
    let forms = (1..=d)
        .map(|ell| {
            exps_of_degree(n, ell * m)
                .into_iter()
                .filter_map(|e| rng.random_bool(0.5).then(|| (e, rng.random_range(1..P))))
                .collect()
        })
        .collect();
    PlainSpec { n, m, d, forms }
}

pub fn binomial(n: u64, k: u64) -> u64 {
    (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
}
