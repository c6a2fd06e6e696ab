use clifford_core::cpoly::{CPoly, Monomial};
use clifford_core::ncpoly::{NcPoly, Word};
use clifford_core::normalform::{truncated_completion, RewriteSystem};
use clifford_core::presentation::{clifford_relations, nondiagonal, roby, weighted, Presentation};
use clifford_core::scalar::FieldSpec;
use clifford_core::text::{parse_poly, x_names};
use proptest::prelude::*;

fn system(text: &str, n: usize, m: u32, d: u32, field: FieldSpec, bound: usize) -> RewriteSystem {
    let f = parse_poly(text, &x_names(n), field).unwrap();
    let pres = clifford_relations(&weighted(m, &f, d).unwrap()).unwrap();
    truncated_completion(&pres, bound).unwrap()
}

fn diagonal_quadric(coeffs: &[i64], field: FieldSpec) -> Presentation {
    let n = coeffs.len();
    let terms = coeffs
        .iter()
        .enumerate()
        .map(|(i, &c)| (Monomial::var(n, i).mul(&Monomial::var(n, i)).unwrap(), field.from_i64(c)));
    let f = CPoly::from_terms(field, n, terms).unwrap();
    clifford_relations(&roby(&f, 2).unwrap()).unwrap()
}

/// All words over `0..g` of length at most `len`.
fn all_words(g: u32, len: usize) -> Vec<Word> {
    let mut out = vec![Word::empty()];
    let mut layer = vec![Word::empty()];
    for _ in 0..len {
        let mut next = Vec::new();
        for w in &layer {
            for a in 0..g {
                next.push(w.concat(&Word::letter(a)));
            }
        }
        out.extend(next.iter().cloned());
        layer = next;
    }
    out
}

/// Irreducible-word count by scanning every word for a rule lead.
fn brute_dims(rs: &RewriteSystem) -> Vec<usize> {
    let g = rs.presentation().generator_count() as u32;
    let mut dims = vec![0; rs.bound() + 1];
    for w in all_words(g, rs.bound()) {
        if rs.rules().iter().all(|r| w.find(r.lead().letters()).is_none()) {
            dims[w.len()] += 1;
        }
    }
    for t in 1..dims.len() {
        dims[t] += dims[t - 1];
    }
    dims
}

#[test]
fn classical_dimensions() {
    for field in [FieldSpec::Rationals, FieldSpec::prime(5).unwrap(), FieldSpec::prime(7).unwrap()]
    {
        for coeffs in [&[1][..], &[1, -1], &[2, 3], &[1, 1, 1], &[1, 2, -3]] {
            let n = coeffs.len();
            let rs = truncated_completion(&diagonal_quadric(coeffs, field), n + 4).unwrap();
            assert!(rs.complete_below() >= n + 2);
            let fd = rs.filtered_dimension();
            assert_eq!(fd.stabilized_total(), Some(1 << n), "{coeffs:?} over {field}");
            assert_eq!(fd.dims, brute_dims(&rs));
            assert!(rs.confluence_audit(rs.complete_below()).is_ok());
        }
    }
}

#[test]
fn binary_cubic_grows() {
    let rs = system("x1^3 + x2^3", 2, 1, 3, FieldSpec::Rationals, 8);
    assert_eq!(rs.complete_below(), 8);
    let dims = rs.filtered_dimension().dims;
    assert!(dims.windows(2).all(|w| w[0] < w[1]), "{dims:?}");
    assert_eq!(dims, brute_dims(&rs));
    assert!(rs.confluence_audit(8).is_ok());
}

#[test]
fn audits_on_mixed_specs() {
    let q = FieldSpec::Rationals;
    let v = x_names(2);
    let f1 = parse_poly("x1 + x2", &v, q).unwrap();
    let f2 = parse_poly("x1*x2", &v, q).unwrap();
    let f3 = parse_poly("x1^3 - x2^3", &v, q).unwrap();
    let pres = clifford_relations(&nondiagonal(&[f1, f2, f3]).unwrap()).unwrap();
    let rs = truncated_completion(&pres, 6).unwrap();
    assert!(rs.confluence_audit(6).is_ok());
    assert_eq!(rs.filtered_dimension().dims, brute_dims(&rs));

    let f7 = FieldSpec::prime(7).unwrap();
    let rs = system("x1^4 + x2^4", 2, 2, 2, f7, 5);
    assert!(rs.confluence_audit(5).is_ok());
    assert_eq!(rs.filtered_dimension().dims, brute_dims(&rs));
}

fn membership_check(rs: &RewriteSystem) {
    let field = rs.field();
    let g = rs.presentation().generator_count() as u32;
    let d = rs.presentation().spec().d() as usize;
    let room = rs.complete_below() - d;
    let words = all_words(g, room);
    for r in rs.presentation().relation_polys() {
        assert!(rs.normal_form(r).unwrap().is_zero());
        for u in &words {
            for v in words.iter().filter(|v| u.len() + v.len() <= room) {
                let p = r.sandwich(&field.one(), u.letters(), v.letters());
                assert!(rs.normal_form(&p).unwrap().is_zero(), "{u:?} r {v:?}");
            }
        }
    }
}

#[test]
fn ideal_membership() {
    let q = FieldSpec::Rationals;
    membership_check(&system("x1^2 + x2^2", 2, 1, 2, q, 5));
    membership_check(&system("x1^2 - 2*x2^2 + x3^2", 3, 1, 2, q, 4));
    membership_check(&system("x1^3 + x2^3", 2, 1, 3, FieldSpec::prime(2).unwrap(), 6));
}

fn center_check(rs: &RewriteSystem, t: usize) {
    let field = rs.field();
    let g = rs.presentation().generator_count() as u32;
    let center = rs.center_basis(t).unwrap();
    assert!(center.iter().any(|z| *z == NcPoly::one(field)));
    let commutes = |z: &NcPoly| {
        (0..g).all(|a| {
            let x = NcPoly::generator(field, a);
            let c = z.mul(&x).unwrap().sub(&x.mul(z).unwrap()).unwrap();
            rs.normal_form(&c).unwrap().is_zero()
        })
    };
    for z in &center {
        assert!(commutes(z));
    }
    for a in &center {
        for b in center
            .iter()
            .filter(|b| a.degree().unwrap() + b.degree().unwrap() < rs.complete_below())
        {
            let p = rs.normal_form(&a.mul(b).unwrap()).unwrap();
            if p.degree().unwrap_or(0) < rs.complete_below() {
                assert!(commutes(&p));
            }
        }
    }
}

#[test]
fn center_soundness() {
    let q = FieldSpec::Rationals;
    center_check(&system("x1^2", 1, 1, 2, q, 5), 4);
    center_check(&system("x1^2 + x2^2", 2, 1, 2, q, 6), 5);
    center_check(&system("x1^2 - 3*x2^2", 2, 1, 2, FieldSpec::prime(5).unwrap(), 6), 5);
    center_check(&system("x1^3 + x2^3", 2, 1, 3, q, 6), 5);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn normal_forms_are_canonical(
        terms in prop::collection::vec((prop::collection::vec(0u32..2, 0..4), -3i64..4), 0..5),
        u in prop::collection::vec(0u32..2, 0..2),
        v in prop::collection::vec(0u32..2, 0..2),
        which in 0usize..3,
        c in 1i64..5,
    ) {
        let q = FieldSpec::Rationals;
        let rs = system("x1^2 + x1*x2 - x2^2", 2, 1, 2, q, 7);
        let p = NcPoly::from_terms(q, terms.into_iter().map(|(w, c)| (Word(w), q.from_i64(c)))).unwrap();
        let nf = rs.normal_form(&p).unwrap();
        prop_assert_eq!(rs.normal_form(&nf).unwrap(), nf.clone());
        for (w, _) in nf.terms() {
            prop_assert!(rs.is_irreducible(w));
        }
        let rels: Vec<&NcPoly> = rs.presentation().relation_polys().collect();
        let r = rels[which % rels.len()];
        let shifted = p.add(&r.sandwich(&q.from_i64(c), &u, &v)).unwrap();
        prop_assert_eq!(rs.normal_form(&shifted).unwrap(), nf);
    }
}
