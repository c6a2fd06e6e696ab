//! Form specifications and their Clifford presentations.
//!
//! A [`FormSpec`] fixes forms `f_m, f_{2m}, ..., f_{dm}` in `x_1 .. x_n`. Its
//! Clifford algebra is the free algebra on generators `a_J` (`|J| = m`)
//! modulo the coefficients, in the commuting variables, of
//!
//! ```text
//! L^d - sum_{l=1..d} L^{d-l} f_{lm},    L = sum_J a_J x^J.
//! ```
//!
//! The lower forms are summed up to `d`, matching the hypersurface
//! `x0^d = x0^{d-1} f_m + ... + f_{dm}`.

use alloc::format;
use alloc::vec::Vec;

use crate::cpoly::{CPoly, Monomial};
use crate::error::{Error, Result};
use crate::mixed::MixedPoly;
use crate::ncpoly::{NcPoly, Word};
use crate::scalar::FieldSpec;
use crate::text::GeneratorNames;

/// Exponent vector `J` with `|J| = m` indexing a generator `a_J`.
pub type GeneratorIndex = Monomial;

/// The data `(n, m, d, f_m, ..., f_{dm})` over a field.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct FormSpec {
    field: FieldSpec,
    n: usize,
    m: u32,
    d: u32,
    /// Entry `l - 1` holds `f_{lm}`.
    forms: Vec<CPoly>,
}

impl FormSpec {
    /// Validating constructor; `forms[l - 1]` is `f_{lm}` and must be zero or
    /// homogeneous of degree `l * m`.
    pub fn new(field: FieldSpec, n: usize, m: u32, d: u32, forms: Vec<CPoly>) -> Result<Self> {
        if n == 0 || m == 0 || d == 0 {
            return Err(Error::InvalidForm(format!(
                "n, m, d must be positive (got n={n}, m={m}, d={d})"
            )));
        }
        if forms.len() != d as usize {
            return Err(Error::InvalidForm(format!(
                "expected {d} form entries, got {}",
                forms.len()
            )));
        }
        for (i, f) in forms.iter().enumerate() {
            if f.field() != field {
                return Err(Error::FieldMismatch);
            }
            if f.nvars() != n {
                return Err(Error::ArityMismatch { expected: n, found: f.nvars() });
            }
            let expected = (i as u32 + 1).checked_mul(m).ok_or(Error::ExponentOverflow)?;
            if !f.is_homogeneous_of(expected) {
                return Err(Error::NotHomogeneous { ell: i + 1, expected });
            }
        }
        Ok(FormSpec { field, n, m, d, forms })
    }

    /// Like [`FormSpec::new`] with sparse `(l, f_{lm})` entries; missing
    /// entries are zero. Repeated `l` is rejected.
    pub fn from_entries<I>(field: FieldSpec, n: usize, m: u32, d: u32, entries: I) -> Result<Self>
    where
        I: IntoIterator<Item = (usize, CPoly)>,
    {
        let mut forms: Vec<Option<CPoly>> = alloc::vec![None; d as usize];
        for (ell, f) in entries {
            if ell == 0 || ell > d as usize {
                return Err(Error::InvalidForm(format!("entry index {ell} outside 1..={d}")));
            }
            if forms[ell - 1].replace(f).is_some() {
                return Err(Error::InvalidForm(format!("entry {ell} given twice")));
            }
        }
        let forms = forms.into_iter().map(|f| f.unwrap_or_else(|| CPoly::zero(field, n))).collect();
        Self::new(field, n, m, d, forms)
    }

    pub fn field(&self) -> FieldSpec {
        self.field
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn m(&self) -> u32 {
        self.m
    }

    pub fn d(&self) -> u32 {
        self.d
    }

    /// `f_{lm}` for `1 <= l <= d`.
    pub fn form(&self, ell: usize) -> &CPoly {
        &self.forms[ell - 1]
    }

    pub fn forms(&self) -> &[CPoly] {
        &self.forms
    }

    /// True when only the top form `f_{dm}` may be nonzero.
    pub fn is_diagonal(&self) -> bool {
        self.forms[..self.forms.len() - 1].iter().all(CPoly::is_zero)
    }
}

/// Roby's Clifford algebra of a degree-`d` form: `m = 1` and `f_d = f`.
pub fn roby(f: &CPoly, d: u32) -> Result<FormSpec> {
    weighted(1, f, d)
}

/// The Clifford algebra of `f` weighted by `m`; `f` has degree `m * d`.
pub fn weighted(m: u32, f: &CPoly, d: u32) -> Result<FormSpec> {
    if d == 0 || m == 0 {
        return Err(Error::InvalidForm(format!("m and d must be positive (m={m}, d={d})")));
    }
    let deg = m.checked_mul(d).ok_or(Error::ExponentOverflow)?;
    if !f.is_homogeneous_of(deg) {
        return Err(Error::NotHomogeneous { ell: d as usize, expected: deg });
    }
    let mut forms = alloc::vec![CPoly::zero(f.field(), f.nvars()); d as usize - 1];
    forms.push(f.clone());
    FormSpec::new(f.field(), f.nvars(), m, d, forms)
}

/// The non-diagonal algebra `C(f_1, ..., f_d)` with `f_i` of degree `i`.
pub fn nondiagonal(f_list: &[CPoly]) -> Result<FormSpec> {
    let first = f_list.first().ok_or_else(|| Error::InvalidForm("empty form list".into()))?;
    FormSpec::new(first.field(), first.nvars(), 1, f_list.len() as u32, f_list.to_vec())
}

/// All exponent vectors of weight `m` in `n` variables, ascending.
pub fn generators(spec: &FormSpec) -> Vec<GeneratorIndex> {
    Monomial::all_of_degree(spec.n, spec.m)
}

/// One extracted relation: the coefficient of `x^monomial` in the master
/// identity.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Relation {
    pub monomial: Monomial,
    pub poly: NcPoly,
}

/// Generators of the Clifford algebra together with the relations spanning
/// its defining ideal.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Presentation {
    spec: FormSpec,
    generators: Vec<GeneratorIndex>,
    relations: Vec<Relation>,
    slots: Vec<Monomial>,
}

impl Presentation {
    /// A presentation with an arbitrary relation list over the spec's
    /// generators. Slots are the relations' own labels.
    pub fn with_relations(spec: FormSpec, relations: Vec<NcPoly>) -> Result<Self> {
        let generators = generators(&spec);
        let mut rels = Vec::with_capacity(relations.len());
        for (i, poly) in relations.into_iter().enumerate() {
            if poly.field() != spec.field {
                return Err(Error::FieldMismatch);
            }
            if poly.max_letter().is_some_and(|l| l as usize >= generators.len()) {
                return Err(Error::InvalidForm(format!(
                    "relation {i} uses a generator index outside 0..{}",
                    generators.len()
                )));
            }
            if !poly.is_zero() {
                rels.push(Relation { monomial: Monomial::one(spec.n), poly });
            }
        }
        let slots = rels.iter().map(|r| r.monomial.clone()).collect();
        Ok(Presentation { spec, generators, relations: rels, slots })
    }

    pub fn spec(&self) -> &FormSpec {
        &self.spec
    }

    pub fn field(&self) -> FieldSpec {
        self.spec.field
    }

    pub fn generators(&self) -> &[GeneratorIndex] {
        &self.generators
    }

    pub fn generator_count(&self) -> usize {
        self.generators.len()
    }

    pub fn names(&self) -> GeneratorNames {
        GeneratorNames::from_indices(&self.generators)
    }

    /// Nonzero relations in slot order.
    pub fn relations(&self) -> &[Relation] {
        &self.relations
    }

    pub fn relation_polys(&self) -> impl Iterator<Item = &NcPoly> + '_ {
        self.relations.iter().map(|r| &r.poly)
    }

    /// Every x-monomial slot of degree `m * d`, ascending, including those
    /// whose coefficient vanished.
    pub fn slots(&self) -> &[Monomial] {
        &self.slots
    }

    /// Slots whose extracted coefficient was zero.
    pub fn omitted_slots(&self) -> Vec<&Monomial> {
        self.slots.iter().filter(|s| !self.relations.iter().any(|r| &r.monomial == *s)).collect()
    }
}

/// `L = sum_J a_J ⊗ x^J` over the spec's generators.
pub fn linear_form(spec: &FormSpec) -> MixedPoly {
    let field = spec.field;
    let terms = generators(spec)
        .into_iter()
        .enumerate()
        .map(|(i, j)| (Word::letter(i as u32), j, field.one()));
    MixedPoly::from_terms(field, spec.n, terms).expect("generator exponents have arity n")
}

/// `L^d - sum_{l=1..d} L^{d-l} (1 ⊗ f_{lm})`.
pub fn master_identity(spec: &FormSpec) -> Result<MixedPoly> {
    let l = linear_form(spec);
    let d = spec.d as usize;
    let mut powers = Vec::with_capacity(d + 1);
    powers.push(MixedPoly::one(spec.field, spec.n));
    for k in 1..=d {
        let next = powers[k - 1].mul(&l)?;
        powers.push(next);
    }
    let mut delta = powers[d].clone();
    for ell in 1..=d {
        let f = spec.form(ell);
        if f.is_zero() {
            continue;
        }
        let term = powers[d - ell].mul(&MixedPoly::from_cpoly(f))?;
        delta = delta.sub(&term)?;
    }
    Ok(delta)
}

/// Extracts the relation list: one slot per x-monomial of degree `m * d`.
pub fn clifford_relations(spec: &FormSpec) -> Result<Presentation> {
    let spec = FormSpec::new(spec.field, spec.n, spec.m, spec.d, spec.forms.clone())?;
    let delta = master_identity(&spec)?;
    let top = spec.m.checked_mul(spec.d).ok_or(Error::ExponentOverflow)?;
    let slots = Monomial::all_of_degree(spec.n, top);
    let mut relations = Vec::new();
    for alpha in &slots {
        let poly = delta.coeff_of_xmonomial(alpha)?;
        if !poly.is_zero() {
            relations.push(Relation { monomial: alpha.clone(), poly });
        }
    }
    Ok(Presentation { generators: generators(&spec), spec, relations, slots })
}

/// The hypersurface `x0^d - sum x0^{d-l} f_{lm}` in weighted projective
/// space with `x0` of weight `m`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HypersurfaceData {
    /// Polynomial in `x0, x1, ..., xn`.
    pub equation: CPoly,
    /// `[m, 1, ..., 1]`.
    pub weights: Vec<u32>,
    pub genus_hint: Option<u64>,
}

pub fn hypersurface_equation(spec: &FormSpec) -> HypersurfaceData {
    let field = spec.field;
    let nv = spec.n + 1;
    let d = spec.d;
    let x0 = CPoly::var(field, nv, 0);
    let mut eq = x0.pow(d).expect("small exponent");
    for ell in 1..=d as usize {
        let f = spec.form(ell).prepend_vars(1);
        let t = x0.pow(d - ell as u32).and_then(|p| p.mul(&f)).expect("same ring");
        eq = eq.sub(&t).expect("same ring");
    }
    let mut weights = alloc::vec![1; nv];
    weights[0] = spec.m;
    let genus_hint =
        if spec.n == 2 { crate::ulrich::genus(spec).ok().map(|c| c.genus) } else { None };
    HypersurfaceData { equation: eq, weights, genus_hint }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::text::{format_ncpoly, format_poly, parse_poly, x_names};
    use alloc::string::String;
    use alloc::vec;

    fn poly(s: &str, n: usize, f: FieldSpec) -> CPoly {
        parse_poly(s, &x_names(n), f).unwrap()
    }

    fn rendered(p: &Presentation) -> Vec<String> {
        let names = p.names();
        p.relations().iter().map(|r| format_ncpoly(&r.poly, &names)).collect()
    }

    #[test]
    fn generator_lists() {
        let q = FieldSpec::Rationals;
        let s = roby(&poly("x1^2 + x2^2", 2, q), 2).unwrap();
        assert_eq!(generators(&s), vec![Monomial(vec![1, 0]), Monomial(vec![0, 1])]);
        let w = weighted(2, &poly("x1^4 - x2^4", 2, q), 2).unwrap();
        assert_eq!(
            generators(&w),
            vec![Monomial(vec![2, 0]), Monomial(vec![1, 1]), Monomial(vec![0, 2])]
        );
    }

    #[test]
    fn sum_of_two_squares() {
        let q = FieldSpec::Rationals;
        let s = roby(&poly("x1^2 + x2^2", 2, q), 2).unwrap();
        let p = clifford_relations(&s).unwrap();
        assert_eq!(
            rendered(&p),
            vec!["-1 + a[1,0]^2", "a[1,0]*a[0,1] + a[0,1]*a[1,0]", "-1 + a[0,1]^2"]
        );
        assert!(p.omitted_slots().is_empty());
    }

    #[test]
    fn one_variable_square() {
        let q = FieldSpec::Rationals;
        let s = roby(&poly("x1^2", 1, q), 2).unwrap();
        let p = clifford_relations(&s).unwrap();
        assert_eq!(rendered(&p), vec!["-1 + a[1]^2"]);
    }

    #[test]
    fn constructor_preconditions() {
        let q = FieldSpec::Rationals;
        let cubic = poly("x1^3 + x2^3", 2, q);
        let s = roby(&cubic, 3).unwrap();
        assert!(s.is_diagonal());
        assert_eq!(s.forms()[0], CPoly::zero(q, 2));
        assert_eq!(clifford_relations(&s).unwrap().slots().len(), 4);
        assert!(matches!(roby(&poly("x1^2*x2", 2, q), 2), Err(Error::NotHomogeneous { .. })));
        assert!(weighted(2, &cubic, 2).is_err());
        assert_eq!(weighted(1, &cubic, 3).unwrap(), s);
        let bad = [poly("x1", 2, q), poly("x1^3", 2, q), poly("x2^3", 2, q)];
        assert!(matches!(nondiagonal(&bad), Err(Error::NotHomogeneous { ell: 2, .. })));
    }

    #[test]
    fn nondiagonal_hypersurface() {
        let q = FieldSpec::Rationals;
        let fl = [poly("x1 + x2", 2, q), poly("x1*x2", 2, q), poly("x1^3 - x2^3", 2, q)];
        let s = nondiagonal(&fl).unwrap();
        let h = hypersurface_equation(&s);
        let vars = ["x0", "x1", "x2"];
        assert_eq!(
            format_poly(&h.equation, &vars),
            "x0^3 - x0^2*x1 - x1^3 - x0^2*x2 - x0*x1*x2 + x2^3"
        );
        assert!(h.equation.is_weighted_homogeneous_of(&h.weights, 3));
    }

    #[test]
    fn hypersurface_of_weighted_quartic() {
        let q = FieldSpec::Rationals;
        let s = weighted(2, &poly("x1^4 + x2^4", 2, q), 2).unwrap();
        let h = hypersurface_equation(&s);
        assert_eq!(h.weights, vec![2, 1, 1]);
        assert_eq!(format_poly(&h.equation, &["x0", "x1", "x2"]), "x0^2 - x1^4 - x2^4");
        assert_eq!(h.genus_hint, Some(1));
        let r = roby(&poly("x1^2 + x2^2", 2, q), 2).unwrap();
        assert_eq!(
            format_poly(&hypersurface_equation(&r).equation, &["x0", "x1", "x2"]),
            "x0^2 - x1^2 - x2^2"
        );
    }

    #[test]
    fn free_presentation() {
        let q = FieldSpec::Rationals;
        let s = roby(&poly("x1^2", 1, q), 2).unwrap();
        let p = Presentation::with_relations(s, Vec::new()).unwrap();
        assert!(p.relations().is_empty());
    }
}
