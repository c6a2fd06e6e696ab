//! Graded modules over `k[x1, x2]` with an `x0`-action, splitting types and
//! the Ulrich criterion for degree-`d` covers of the projective line.
//!
//! A module is held as the free graded module `⊕ S(-s_i)` together with the
//! action of `x0` as a matrix of forms, entry `(i, j)` of degree
//! `m + s_i - s_j`. Its sheafification splits as `⊕ O(n_i)` with
//! `n_i = -s_i`; the module is Ulrich exactly when every `n_i` is zero.

use alloc::format;
use alloc::vec::Vec;

use num_rational::Rational64;

use crate::cpoly::{CPoly, Monomial};
use crate::error::{Error, Result};
use crate::polymatrix::{hypersurface_residual, PolyMatrix};
use crate::presentation::{generators, FormSpec};
use crate::representations::{verify_rep, MatrixRep};
use crate::scalar::{FieldSpec, Scalar};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GradedModule {
    spec: FormSpec,
    shifts: Vec<i64>,
    /// `None` for a bare graded free module used only for its grading.
    action: Option<PolyMatrix>,
}

impl GradedModule {
    /// Checks arity, entry degrees and the hypersurface equation for `action`.
    pub fn new(spec: FormSpec, shifts: Vec<i64>, action: PolyMatrix) -> Result<Self> {
        if spec.n() != 2 {
            return Err(Error::NotBinary(spec.n()));
        }
        let r = shifts.len();
        if action.size() != r {
            return Err(Error::InvalidModule(format!(
                "action is {0}x{0} but there are {r} shifts",
                action.size()
            )));
        }
        if action.field() != spec.field() {
            return Err(Error::FieldMismatch);
        }
        if r > 0 && action.nvars() != 2 {
            return Err(Error::ArityMismatch { expected: 2, found: action.nvars() });
        }
        let m = spec.m() as i64;
        for i in 0..r {
            for j in 0..r {
                let e = action.get(i, j);
                let want = m + shifts[i] - shifts[j];
                let ok = e.is_zero() || (want >= 0 && e.is_homogeneous_of(want as u32));
                if !ok {
                    return Err(Error::InvalidModule(format!(
                        "entry ({i},{j}) is not homogeneous of degree {want}"
                    )));
                }
            }
        }
        if r > 0 && !hypersurface_residual(&spec, &action)?.is_zero() {
            return Err(Error::InvalidModule(
                "action does not satisfy the hypersurface equation".into(),
            ));
        }
        Ok(GradedModule { spec, shifts, action: Some(action) })
    }

    /// A graded free module with the given shifts and no action.
    pub fn bare(spec: FormSpec, shifts: Vec<i64>) -> Result<Self> {
        if spec.n() != 2 {
            return Err(Error::NotBinary(spec.n()));
        }
        Ok(GradedModule { spec, shifts, action: None })
    }

    pub fn spec(&self) -> &FormSpec {
        &self.spec
    }

    pub fn shifts(&self) -> &[i64] {
        &self.shifts
    }

    pub fn action(&self) -> Option<&PolyMatrix> {
        self.action.as_ref()
    }

    /// Free rank over `k[x1, x2]`.
    pub fn rank(&self) -> usize {
        self.shifts.len()
    }
}

/// The multiset `{n_i}`, sorted ascending.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct SplittingType(pub Vec<i64>);

impl SplittingType {
    pub fn is_trivial(&self) -> bool {
        self.0.iter().all(|&n| n == 0)
    }
}

/// Dimension of the degree-`t` part: `sum_i max(0, t - s_i + 1)`.
pub fn graded_dimension(module: &GradedModule, t: i64) -> u64 {
    module.shifts.iter().map(|&s| (t - s + 1).max(0) as u64).sum()
}

/// Recovers `{n_i}` from the Hilbert function by second differences:
/// `h(t) - h(t-1) = #{i : n_i >= -t}`.
pub fn splitting_type(module: &GradedModule) -> SplittingType {
    let (Some(&lo), Some(&hi)) = (module.shifts.iter().min(), module.shifts.iter().max()) else {
        return SplittingType(Vec::new());
    };
    let h = |t: i64| graded_dimension(module, t) as i64;
    let jump = |t: i64| h(t) - h(t - 1);
    let mut out = Vec::with_capacity(module.rank());
    for k in -hi..=-lo {
        let count = jump(-k) - jump(-k - 1);
        out.extend(core::iter::repeat_n(k, count as usize));
    }
    debug_assert!(
        (lo - 1..=hi).all(|t| { h(t) == out.iter().map(|n| (n + t + 1).max(0)).sum::<i64>() })
    );
    SplittingType(out)
}

/// Shifts decrease by `t`; the splitting type rises by `t`.
pub fn twist(module: &GradedModule, t: i64) -> GradedModule {
    GradedModule {
        spec: module.spec.clone(),
        shifts: module.shifts.iter().map(|s| s - t).collect(),
        action: module.action.clone(),
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum GenusSource {
    Formula,
    UserSupplied,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct CurveData {
    pub genus: u64,
    pub degree: u32,
    pub source: GenusSource,
}

impl CurveData {
    pub fn user_supplied(spec: &FormSpec, genus: u64) -> Self {
        CurveData { genus, degree: spec.d(), source: GenusSource::UserSupplied }
    }
}

/// Genus of `x0^d = f_{dm}(x1, x2)` by Riemann-Hurwitz for a cyclic cover
/// totally ramified over the `md` distinct roots of `f_{dm}`:
/// `g = (d - 1)(md - 2) / 2`.
pub fn genus(spec: &FormSpec) -> Result<CurveData> {
    if spec.n() != 2 {
        return Err(Error::NotBinary(spec.n()));
    }
    if !spec.is_diagonal() {
        return Err(Error::GenusUnavailable("form is not diagonal".into()));
    }
    let d = spec.d() as i64;
    let p = spec.field().characteristic();
    if p != 0 && (d as u64).is_multiple_of(p) {
        return Err(Error::GenusUnavailable(format!("characteristic {p} divides the degree {d}")));
    }
    let f = spec.form(spec.d() as usize);
    if !is_squarefree_binary(f) {
        return Err(Error::GenusUnavailable("top form is not squarefree".into()));
    }
    let md = spec.m() as i64 * d;
    let g = (d - 1) * (md - 2) / 2;
    Ok(CurveData { genus: g.max(0) as u64, degree: spec.d(), source: GenusSource::Formula })
}

/// Squarefree test for a nonzero binary form: no repeated root at infinity
/// and `gcd(u, u') = 1` for the dehomogenization `u(t) = f(t, 1)`.
fn is_squarefree_binary(f: &CPoly) -> bool {
    let Some(deg) = f.degree() else {
        return false;
    };
    let field = f.field();
    let mut u = alloc::vec![field.zero(); deg as usize + 1];
    for (m, c) in f.terms() {
        u[m.0[0] as usize] = c.clone();
    }
    trim(&mut u);
    let root_at_infinity = deg as usize - (u.len() - 1);
    if root_at_infinity > 1 {
        return false;
    }
    let du = derivative(field, &u);
    let g = gcd(field, u, du);
    g.len() == 1
}

fn trim(u: &mut Vec<Scalar>) {
    while u.len() > 1 && u.last().is_some_and(Scalar::is_zero) {
        u.pop();
    }
}

fn is_zero_poly(u: &[Scalar]) -> bool {
    u.iter().all(Scalar::is_zero)
}

fn derivative(field: FieldSpec, u: &[Scalar]) -> Vec<Scalar> {
    let mut out: Vec<Scalar> = u
        .iter()
        .enumerate()
        .skip(1)
        .map(|(i, c)| field.mul(c, &field.from_i64(i as i64)))
        .collect();
    if out.is_empty() {
        out.push(field.zero());
    }
    trim(&mut out);
    out
}

fn rem(field: FieldSpec, mut a: Vec<Scalar>, b: &[Scalar]) -> Vec<Scalar> {
    let lead_inv = field.inv(b.last().expect("nonempty")).expect("trimmed divisor");
    while a.len() >= b.len() && !is_zero_poly(&a) {
        let q = field.mul(a.last().expect("nonempty"), &lead_inv);
        let shift = a.len() - b.len();
        for (i, c) in b.iter().enumerate() {
            a[shift + i] = field.sub(&a[shift + i], &field.mul(&q, c));
        }
        a.pop();
        trim(&mut a);
    }
    a
}

fn gcd(field: FieldSpec, mut a: Vec<Scalar>, mut b: Vec<Scalar>) -> Vec<Scalar> {
    while !is_zero_poly(&b) {
        let r = rem(field, a, &b);
        a = b;
        b = r;
    }
    a
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct UlrichReport {
    pub splitting: SplittingType,
    pub is_ulrich: bool,
    /// `deg V / rank V`.
    pub slope: Rational64,
    pub genus: u64,
    /// `h^0(V(-1)) = sum max(0, n_i)`.
    pub h0_of_minus_one: u64,
    /// `chi(V) = sum (n_i + 1)`.
    pub euler_characteristic: i64,
    /// `rank V = (free rank) / d`.
    pub rank: Rational64,
    /// `deg V = chi + rank (g - 1)`.
    pub degree: Rational64,
}

impl UlrichReport {
    /// The numerical Ulrich conditions: slope `d + g - 1`, vanishing
    /// `h^0(V(-1))`, and `deg V = rank (d + g - 1)`.
    pub fn numerical_criterion(&self, d: u32) -> bool {
        let target = Rational64::from_integer(d as i64 + self.genus as i64 - 1);
        self.slope == target && self.h0_of_minus_one == 0 && self.degree == self.rank * target
    }
}

pub fn ulrich_check(module: &GradedModule, curve: &CurveData) -> Result<UlrichReport> {
    let d = module.spec.d();
    if curve.degree != d {
        return Err(Error::DegreeMismatch { curve: curve.degree, form: d });
    }
    if module.rank() == 0 {
        return Err(Error::DegenerateModule);
    }
    let splitting = splitting_type(module);
    let chi: i64 = splitting.0.iter().map(|n| n + 1).sum();
    let h0: u64 = splitting.0.iter().map(|&n| n.max(0) as u64).sum();
    let g = curve.genus as i64;
    let rank = Rational64::new(module.rank() as i64, d as i64);
    let degree = Rational64::from_integer(chi) + rank * Rational64::from_integer(g - 1);
    let slope = degree / rank;
    Ok(UlrichReport {
        is_ulrich: splitting.is_trivial(),
        splitting,
        slope,
        genus: curve.genus,
        h0_of_minus_one: h0,
        euler_characteristic: chi,
        rank,
        degree,
    })
}

/// The module `⊕ S` with `x0` acting by `M(x) = sum_J A_J x^J`.
pub fn module_from_rep(rep: &MatrixRep) -> Result<GradedModule> {
    if rep.spec().n() != 2 {
        return Err(Error::NotBinary(rep.spec().n()));
    }
    if !verify_rep(rep)?.valid {
        return Err(Error::UnverifiedRep);
    }
    GradedModule::new(rep.spec().clone(), alloc::vec![0; rep.size()], rep.action_matrix())
}

/// Reads the coefficient matrices `A_J` back off a module with trivial
/// splitting.
pub fn rep_from_module(module: &GradedModule) -> Result<MatrixRep> {
    if module.shifts.iter().any(|&s| s != 0) {
        return Err(Error::NonzeroSplitting);
    }
    let action = module
        .action
        .as_ref()
        .ok_or_else(|| Error::InvalidModule("module carries no action".into()))?;
    if module.rank() == 0 {
        return Err(Error::DegenerateModule);
    }
    let gens: Vec<Monomial> = generators(&module.spec);
    let matrices = gens.iter().map(|j| action.coefficient_matrix(j)).collect();
    MatrixRep::new(module.spec.clone(), matrices)
}
