//! JSON file formats. Inputs are deserialized with serde; outputs are built
//! as `serde_json::Value`, whose object keys are kept sorted.

use std::fs;
use std::path::Path;

use clifford_core::cpoly::CPoly;
use clifford_core::linalg::Matrix;
use clifford_core::ncpoly::{NcPoly, Word};
use clifford_core::polymatrix::{EntryWitness, PolyMatrix};
use clifford_core::presentation::{generators, FormSpec, Presentation};
use clifford_core::representations::MatrixRep;
use clifford_core::scalar::{FieldSpec, Scalar};
use clifford_core::text::{parse_poly, x_names};
use clifford_core::ulrich::GradedModule;
use num_rational::Rational64;
use serde::Deserialize;
use serde_json::{json, Value};

use crate::error::CliError;

#[derive(Debug, Deserialize)]
pub enum FieldJson {
    Q,
    Fp(u64),
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FormEntryJson {
    pub ell: usize,
    pub poly: String,
}

/// `{"field": "Q" | {"Fp": p}, "n", "m", "d", "forms": [{"ell", "poly"}]}`.
#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FormSpecJson {
    pub field: FieldJson,
    pub n: usize,
    pub m: u32,
    pub d: u32,
    #[serde(default)]
    pub forms: Vec<FormEntryJson>,
}

#[derive(Debug, Deserialize)]
#[serde(untagged)]
pub enum ScalarJson {
    Text(String),
    Int(i64),
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MatrixJson {
    pub size: usize,
    pub entries: Vec<Vec<ScalarJson>>,
}

/// `{"matrices": [Matrix, ...]}` in generator order.
#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RepJson {
    pub matrices: Vec<MatrixJson>,
}

/// `{"spec": FormSpec, "shifts": [..], "action": [[poly, ..], ..] | null}`.
#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ModuleJson {
    pub spec: FormSpecJson,
    pub shifts: Vec<i64>,
    #[serde(default)]
    pub action: Option<Vec<Vec<String>>>,
}

pub fn read_json<T: for<'de> Deserialize<'de>>(path: &Path) -> Result<T, CliError> {
    let text = fs::read_to_string(path).map_err(|e| CliError::io(path, &e))?;
    serde_json::from_str(&text).map_err(|e| CliError::json(path, &text, &e))
}

impl FieldJson {
    pub fn to_field(&self) -> Result<FieldSpec, CliError> {
        match *self {
            FieldJson::Q => Ok(FieldSpec::Rationals),
            FieldJson::Fp(p) => Ok(FieldSpec::prime(p)?),
        }
    }
}

impl FormSpecJson {
    pub fn to_spec(&self) -> Result<FormSpec, CliError> {
        let field = self.field.to_field()?;
        let vars = x_names(self.n);
        let mut entries = Vec::with_capacity(self.forms.len());
        for e in &self.forms {
            let f = parse_poly(&e.poly, &vars, field)
                .map_err(|err| CliError::domain_in(format!("forms[ell={}]", e.ell), err))?;
            entries.push((e.ell, f));
        }
        Ok(FormSpec::from_entries(field, self.n, self.m, self.d, entries)?)
    }
}

pub fn read_spec(path: &Path) -> Result<FormSpec, CliError> {
    read_json::<FormSpecJson>(path)?.to_spec()
}

fn scalar_from_json(field: FieldSpec, s: &ScalarJson) -> Result<Scalar, CliError> {
    match s {
        ScalarJson::Text(t) => Ok(field.parse_scalar(t)?),
        ScalarJson::Int(v) => Ok(field.from_i64(*v)),
    }
}

impl MatrixJson {
    pub fn to_matrix(&self, field: FieldSpec) -> Result<Matrix, CliError> {
        if self.entries.len() != self.size || self.entries.iter().any(|r| r.len() != self.size) {
            return Err(CliError::Domain(clifford_core::Error::InvalidRep(format!(
                "entries do not form a {0}x{0} matrix",
                self.size
            ))));
        }
        let rows = self
            .entries
            .iter()
            .map(|r| r.iter().map(|s| scalar_from_json(field, s)).collect())
            .collect::<Result<Vec<Vec<Scalar>>, _>>()?;
        Ok(Matrix::from_rows(field, rows)?)
    }
}

pub fn read_rep(path: &Path, spec: &FormSpec) -> Result<MatrixRep, CliError> {
    let rep: RepJson = read_json(path)?;
    let matrices =
        rep.matrices.iter().map(|m| m.to_matrix(spec.field())).collect::<Result<Vec<_>, _>>()?;
    Ok(MatrixRep::new(spec.clone(), matrices)?)
}

pub fn read_module(path: &Path) -> Result<GradedModule, CliError> {
    let m: ModuleJson = read_json(path)?;
    let spec = m.spec.to_spec()?;
    let Some(action) = m.action else {
        return Ok(GradedModule::bare(spec, m.shifts)?);
    };
    let field = spec.field();
    let size = m.shifts.len();
    if action.len() != size || action.iter().any(|r| r.len() != size) {
        return Err(CliError::Domain(clifford_core::Error::InvalidModule(format!(
            "action must be a {size}x{size} matrix of polynomials"
        ))));
    }
    let vars = x_names(2);
    let mut entries = Vec::with_capacity(size * size);
    for (i, row) in action.iter().enumerate() {
        for (j, text) in row.iter().enumerate() {
            let p = parse_poly(text, &vars, field)
                .map_err(|err| CliError::domain_in(format!("action[{i}][{j}]"), err))?;
            entries.push(p);
        }
    }
    if spec.n() != 2 {
        return Err(clifford_core::Error::NotBinary(spec.n()).into());
    }
    let action = PolyMatrix::from_entries(field, 2, size, entries);
    Ok(GradedModule::new(spec, m.shifts, action)?)
}

pub fn scalar_json(field: FieldSpec, s: &Scalar) -> Value {
    Value::String(field.format_scalar(s))
}

pub fn word_json(w: &Word) -> Value {
    json!(w.letters())
}

pub fn ncpoly_json(p: &NcPoly) -> Value {
    let field = p.field();
    Value::Array(
        p.terms()
            .map(|(w, c)| json!({ "word": word_json(w), "coeff": scalar_json(field, c) }))
            .collect(),
    )
}

pub fn relations_json(pres: &Presentation) -> Value {
    Value::Array(
        pres.relations()
            .iter()
            .map(
                |r| json!({ "monomial": r.monomial.exponents(), "relation": ncpoly_json(&r.poly) }),
            )
            .collect(),
    )
}

pub fn matrix_json(m: &Matrix) -> Value {
    let field = m.field();
    let entries: Vec<Vec<Value>> =
        (0..m.rows()).map(|i| m.row(i).iter().map(|s| scalar_json(field, s)).collect()).collect();
    json!({ "size": m.rows(), "entries": entries })
}

pub fn rep_json(rep: &MatrixRep) -> Value {
    json!({ "matrices": rep.matrices().iter().map(matrix_json).collect::<Vec<_>>() })
}

pub fn witness_json(field: FieldSpec, w: &EntryWitness) -> Value {
    json!({
        "monomial": w.monomial.exponents(),
        "row": w.row,
        "col": w.col,
        "value": scalar_json(field, &w.value),
    })
}

pub fn rational_json(q: Rational64) -> Value {
    Value::String(q.to_string())
}

pub fn field_json(field: FieldSpec) -> Value {
    match field {
        FieldSpec::Rationals => json!("Q"),
        FieldSpec::Prime(p) => json!({ "Fp": p }),
    }
}

/// Generator names in list order, so word indices can be read back.
pub fn generators_json(spec: &FormSpec) -> Value {
    let gens = generators(spec);
    let names = clifford_core::text::GeneratorNames::from_indices(&gens);
    Value::Array(
        gens.iter()
            .enumerate()
            .map(|(i, j)| json!({ "index": i, "exponents": j.exponents(), "name": names.name(i) }))
            .collect(),
    )
}

pub fn poly_text(p: &CPoly, vars: &[String]) -> Value {
    Value::String(clifford_core::text::format_poly(p, vars))
}
