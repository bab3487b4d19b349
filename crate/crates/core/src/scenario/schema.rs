//! JSON scenario format and its validation into domain types.
//!
//! Rationals are strings `"p/q"` (plain JSON integers are also accepted),
//! polynomials are lists of `{exponents, coefficient}`, forms are
//! `{n, degree, terms: [{indices, polynomial}]}`, and chains are
//! `{n, k, cells: [{weight, simplex | box}]}`.

use std::fmt;

use serde::de::{self, Deserializer, Visitor};
use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::chains::{BoxCell, Cell, Chain, Simplex};
use crate::exterior_algebra::{AltTensor, DenseTensor, MultiIndex};
use crate::mechanics::{BodyForceField, CauchyStress3D, StressField};
use crate::polyform::{PolyForm, PolyVectorField};
use crate::polynomial::Polynomial;
use crate::rational::{format_rational, parse_rational, Rational};

pub const SCHEMA_VERSION: &str = "1";

/// Diagnostic codes for scenario parsing and validation.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum ErrorCode {
    BadJson,
    UnsupportedSchema,
    UnknownKind,
    BadField,
    BadRational,
    NoncanonicalIndex,
    IndexOutOfRange,
    DegreeMismatch,
    DimensionMismatch,
    Io,
}

impl ErrorCode {
    pub fn as_str(self) -> &'static str {
        match self {
            ErrorCode::BadJson => "BAD_JSON",
            ErrorCode::UnsupportedSchema => "UNSUPPORTED_SCHEMA",
            ErrorCode::UnknownKind => "UNKNOWN_KIND",
            ErrorCode::BadField => "BAD_FIELD",
            ErrorCode::BadRational => "BAD_RATIONAL",
            ErrorCode::NoncanonicalIndex => "NONCANONICAL_INDEX",
            ErrorCode::IndexOutOfRange => "INDEX_OUT_OF_RANGE",
            ErrorCode::DegreeMismatch => "DEGREE_MISMATCH",
            ErrorCode::DimensionMismatch => "DIMENSION_MISMATCH",
            ErrorCode::Io => "IO",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ScenarioError {
    pub code: ErrorCode,
    /// JSON path of the offending field, e.g. `payload.form.terms[0].indices`.
    pub path: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub line: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub column: Option<usize>,
    pub message: String,
}

impl ScenarioError {
    pub fn new(code: ErrorCode, path: impl Into<String>, message: impl Into<String>) -> Self {
        Self { code, path: path.into(), line: None, column: None, message: message.into() }
    }
}

impl fmt::Display for ScenarioError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.code.as_str())?;
        if let (Some(l), Some(c)) = (self.line, self.column) {
            write!(f, " at line {l}, column {c}")?;
        }
        if !self.path.is_empty() {
            write!(f, " ({})", self.path)?;
        }
        write!(f, ": {}", self.message)
    }
}

impl std::error::Error for ScenarioError {}

pub type ParseResult<T> = std::result::Result<T, ScenarioError>;

/// Rational literal as written in the file, validated later.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RawRational(pub String);

impl<'de> Deserialize<'de> for RawRational {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        struct V;
        impl Visitor<'_> for V {
            type Value = RawRational;
            fn expecting(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                write!(f, "a rational string \"p/q\" or an integer")
            }
            fn visit_str<E: de::Error>(self, v: &str) -> Result<RawRational, E> {
                Ok(RawRational(v.to_string()))
            }
            fn visit_i64<E: de::Error>(self, v: i64) -> Result<RawRational, E> {
                Ok(RawRational(v.to_string()))
            }
            fn visit_u64<E: de::Error>(self, v: u64) -> Result<RawRational, E> {
                Ok(RawRational(v.to_string()))
            }
            fn visit_f64<E: de::Error>(self, v: f64) -> Result<RawRational, E> {
                // floats are rejected at validation with BAD_RATIONAL
                Ok(RawRational(v.to_string()))
            }
        }
        d.deserialize_any(V)
    }
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RawTerm {
    pub exponents: Vec<u32>,
    pub coefficient: RawRational,
}

pub type RawPolynomial = Vec<RawTerm>;

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RawFormTerm {
    pub indices: Vec<usize>,
    pub polynomial: RawPolynomial,
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RawForm {
    pub n: usize,
    pub degree: usize,
    #[serde(default)]
    pub terms: Vec<RawFormTerm>,
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RawBox {
    pub origin: Vec<RawRational>,
    #[serde(default)]
    pub edges: Vec<Vec<RawRational>>,
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RawCell {
    #[serde(default)]
    pub weight: Option<RawRational>,
    #[serde(default)]
    pub simplex: Option<Vec<Vec<RawRational>>>,
    #[serde(default, rename = "box")]
    pub box_cell: Option<RawBox>,
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RawChain {
    pub n: usize,
    pub k: usize,
    #[serde(default)]
    pub cells: Vec<RawCell>,
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RawTensorEntry {
    pub indices: Vec<usize>,
    pub value: RawRational,
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RawTensor {
    pub n: usize,
    pub r: usize,
    #[serde(default)]
    pub components: Vec<RawTensorEntry>,
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RawStressEntry {
    pub input: Vec<usize>,
    pub output: Vec<usize>,
    pub polynomial: RawPolynomial,
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RawBodyEntry {
    pub input: Vec<usize>,
    pub polynomial: RawPolynomial,
}

/// Stress given as an explicit table, the identity on `(n−1)`-forms, or `g∧·`.
#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RawStress {
    #[serde(default)]
    pub entries: Option<Vec<RawStressEntry>>,
    #[serde(default)]
    pub identity: bool,
    #[serde(default)]
    pub wedge_form: Option<RawForm>,
}

pub(crate) fn field_path(parent: &str, child: &str) -> String {
    if parent.is_empty() {
        child.to_string()
    } else {
        format!("{parent}.{child}")
    }
}

pub(crate) fn item_path(parent: &str, i: usize) -> String {
    format!("{parent}[{i}]")
}

pub fn rational(raw: &RawRational, path: &str) -> ParseResult<Rational> {
    parse_rational(&raw.0).ok_or_else(|| {
        ScenarioError::new(ErrorCode::BadRational, path, format!("`{}` is not an exact rational p/q", raw.0))
    })
}

pub fn rationals(raw: &[RawRational], path: &str) -> ParseResult<Vec<Rational>> {
    raw.iter().enumerate().map(|(i, r)| rational(r, &item_path(path, i))).collect()
}

pub fn point(raw: &[RawRational], n: usize, path: &str) -> ParseResult<Vec<Rational>> {
    if raw.len() != n {
        return Err(ScenarioError::new(
            ErrorCode::DimensionMismatch,
            path,
            format!("expected {n} coordinates, found {}", raw.len()),
        ));
    }
    rationals(raw, path)
}

pub fn polynomial(raw: &RawPolynomial, n_vars: usize, path: &str) -> ParseResult<Polynomial> {
    let mut terms = Vec::with_capacity(raw.len());
    for (i, t) in raw.iter().enumerate() {
        let tp = item_path(path, i);
        if t.exponents.len() != n_vars {
            return Err(ScenarioError::new(
                ErrorCode::DimensionMismatch,
                field_path(&tp, "exponents"),
                format!("expected {n_vars} exponents, found {}", t.exponents.len()),
            ));
        }
        terms.push((t.exponents.clone(), rational(&t.coefficient, &field_path(&tp, "coefficient"))?));
    }
    Ok(Polynomial::from_terms(n_vars, terms))
}

/// Validate a strictly increasing multi-index of the given length with axes in `1..=n`.
pub fn multi_index(raw: &[usize], n: usize, degree: usize, path: &str) -> ParseResult<MultiIndex> {
    if raw.windows(2).any(|w| w[0] >= w[1]) {
        return Err(ScenarioError::new(
            ErrorCode::NoncanonicalIndex,
            path,
            format!("multi-index {raw:?} is not strictly increasing"),
        ));
    }
    if raw.iter().any(|&a| a == 0 || a > n) {
        return Err(ScenarioError::new(
            ErrorCode::IndexOutOfRange,
            path,
            format!("multi-index {raw:?} has an axis outside 1..={n}"),
        ));
    }
    if raw.len() != degree {
        return Err(ScenarioError::new(
            ErrorCode::DegreeMismatch,
            path,
            format!("multi-index {raw:?} has length {}, expected {degree}", raw.len()),
        ));
    }
    Ok(MultiIndex::new(raw.to_vec()).expect("validated above"))
}

pub fn form(raw: &RawForm, path: &str) -> ParseResult<PolyForm> {
    if raw.degree > raw.n {
        return Err(ScenarioError::new(
            ErrorCode::DegreeMismatch,
            field_path(path, "degree"),
            format!("degree {} exceeds dimension {}", raw.degree, raw.n),
        ));
    }
    let mut comps = Vec::with_capacity(raw.terms.len());
    for (i, t) in raw.terms.iter().enumerate() {
        let tp = item_path(&field_path(path, "terms"), i);
        let idx = multi_index(&t.indices, raw.n, raw.degree, &field_path(&tp, "indices"))?;
        comps.push((idx, polynomial(&t.polynomial, raw.n, &field_path(&tp, "polynomial"))?));
    }
    Ok(PolyForm::from_components(raw.n, raw.degree, comps).expect("validated components"))
}

pub fn form_of_degree(raw: &RawForm, n: usize, degree: usize, path: &str) -> ParseResult<PolyForm> {
    if raw.n != n {
        return Err(ScenarioError::new(
            ErrorCode::DimensionMismatch,
            field_path(path, "n"),
            format!("expected dimension {n}, found {}", raw.n),
        ));
    }
    if raw.degree != degree {
        return Err(ScenarioError::new(
            ErrorCode::DegreeMismatch,
            field_path(path, "degree"),
            format!("expected degree {degree}, found {}", raw.degree),
        ));
    }
    form(raw, path)
}

pub fn vector_field(raw: &[RawPolynomial], n_vars: usize, len: usize, path: &str) -> ParseResult<PolyVectorField> {
    if raw.len() != len {
        return Err(ScenarioError::new(
            ErrorCode::DimensionMismatch,
            path,
            format!("expected {len} components, found {}", raw.len()),
        ));
    }
    let comps = raw
        .iter()
        .enumerate()
        .map(|(i, p)| polynomial(p, n_vars, &item_path(path, i)))
        .collect::<ParseResult<Vec<_>>>()?;
    Ok(PolyVectorField::new(comps).expect("non-empty field with matching variables"))
}

fn cell(raw: &RawCell, n: usize, k: usize, path: &str) -> ParseResult<Cell> {
    match (&raw.simplex, &raw.box_cell) {
        (Some(vs), None) => {
            let sp = field_path(path, "simplex");
            if vs.len() != k + 1 {
                return Err(ScenarioError::new(
                    ErrorCode::DegreeMismatch,
                    &sp,
                    format!("a {k}-simplex needs {} vertices, found {}", k + 1, vs.len()),
                ));
            }
            let verts = vs
                .iter()
                .enumerate()
                .map(|(i, v)| point(v, n, &item_path(&sp, i)))
                .collect::<ParseResult<Vec<_>>>()?;
            Simplex::new(verts)
                .map(Cell::Simplex)
                .map_err(|e| ScenarioError::new(ErrorCode::DimensionMismatch, sp, e.to_string()))
        }
        (None, Some(b)) => {
            let bp = field_path(path, "box");
            if b.edges.len() != k {
                return Err(ScenarioError::new(
                    ErrorCode::DegreeMismatch,
                    field_path(&bp, "edges"),
                    format!("a {k}-box needs {k} edges, found {}", b.edges.len()),
                ));
            }
            let origin = point(&b.origin, n, &field_path(&bp, "origin"))?;
            let edges = b
                .edges
                .iter()
                .enumerate()
                .map(|(i, e)| point(e, n, &item_path(&field_path(&bp, "edges"), i)))
                .collect::<ParseResult<Vec<_>>>()?;
            BoxCell::new(origin, edges)
                .map(Cell::Box)
                .map_err(|e| ScenarioError::new(ErrorCode::DimensionMismatch, bp, e.to_string()))
        }
        _ => Err(ScenarioError::new(ErrorCode::BadField, path, "a cell needs exactly one of `simplex` or `box`")),
    }
}

pub fn chain(raw: &RawChain, path: &str) -> ParseResult<Chain> {
    if raw.k > raw.n {
        return Err(ScenarioError::new(
            ErrorCode::DegreeMismatch,
            field_path(path, "k"),
            format!("cell dimension {} exceeds ambient dimension {}", raw.k, raw.n),
        ));
    }
    let mut out = Chain::empty(raw.n, raw.k);
    for (i, c) in raw.cells.iter().enumerate() {
        let cp = item_path(&field_path(path, "cells"), i);
        let w = match &c.weight {
            Some(w) => rational(w, &field_path(&cp, "weight"))?,
            None => Rational::from_integer(1.into()),
        };
        let cell = cell(c, raw.n, raw.k, &cp)?;
        out.push(w, cell).expect("cell validated against chain shape");
    }
    Ok(out)
}

pub fn chain_of_dim(raw: &RawChain, n: usize, k: usize, path: &str) -> ParseResult<Chain> {
    if raw.n != n {
        return Err(ScenarioError::new(
            ErrorCode::DimensionMismatch,
            field_path(path, "n"),
            format!("expected ambient dimension {n}, found {}", raw.n),
        ));
    }
    if raw.k != k {
        return Err(ScenarioError::new(
            ErrorCode::DegreeMismatch,
            field_path(path, "k"),
            format!("expected {k}-cells, found {}-cells", raw.k),
        ));
    }
    chain(raw, path)
}

pub fn alt_tensor(raw: &RawTensor, path: &str) -> ParseResult<AltTensor> {
    let mut comps = Vec::new();
    for (i, e) in raw.components.iter().enumerate() {
        let ep = item_path(&field_path(path, "components"), i);
        let idx = multi_index(&e.indices, raw.n, raw.r, &field_path(&ep, "indices"))?;
        comps.push((idx, rational(&e.value, &field_path(&ep, "value"))?));
    }
    Ok(AltTensor::from_components(raw.n, raw.r, comps).expect("validated components"))
}

/// General tensor: entries may use any index order, including repeats.
pub fn dense_tensor(raw: &RawTensor, path: &str) -> ParseResult<DenseTensor> {
    let mut entries = Vec::new();
    for (i, e) in raw.components.iter().enumerate() {
        let ep = item_path(&field_path(path, "components"), i);
        let ip = field_path(&ep, "indices");
        if e.indices.len() != raw.r {
            return Err(ScenarioError::new(
                ErrorCode::DegreeMismatch,
                ip,
                format!("entry has {} indices, expected {}", e.indices.len(), raw.r),
            ));
        }
        if e.indices.iter().any(|&a| a == 0 || a > raw.n) {
            return Err(ScenarioError::new(ErrorCode::IndexOutOfRange, ip, format!("axis outside 1..={}", raw.n)));
        }
        entries.push((e.indices.clone(), rational(&e.value, &field_path(&ep, "value"))?));
    }
    Ok(DenseTensor::from_entries(raw.n, raw.r, entries).expect("validated entries"))
}

pub fn stress(raw: &RawStress, n: usize, p: usize, path: &str) -> ParseResult<StressField> {
    let chosen = raw.entries.is_some() as u8 + raw.identity as u8 + raw.wedge_form.is_some() as u8;
    if chosen != 1 {
        return Err(ScenarioError::new(
            ErrorCode::BadField,
            path,
            "stress needs exactly one of `entries`, `identity` or `wedge_form`",
        ));
    }
    let shape_err = |e: crate::Error| ScenarioError::new(ErrorCode::DegreeMismatch, path, e.to_string());
    if raw.identity {
        if n == 0 || p + 1 != n {
            return Err(ScenarioError::new(
                ErrorCode::DegreeMismatch,
                field_path(path, "identity"),
                format!("identity stress needs input degree n−1 = {}, found {p}", n.saturating_sub(1)),
            ));
        }
        return StressField::identity(n).map_err(shape_err);
    }
    if let Some(g) = &raw.wedge_form {
        let gp = field_path(path, "wedge_form");
        if p + 1 > n {
            return Err(ScenarioError::new(ErrorCode::DegreeMismatch, gp, "input degree leaves no room for g"));
        }
        let g = form_of_degree(g, n, n - p - 1, &gp)?;
        return crate::electrodynamics::stress_from_form(&g, p).map_err(shape_err);
    }
    let entries = raw.entries.as_ref().expect("checked above");
    let mut table = Vec::with_capacity(entries.len());
    for (i, e) in entries.iter().enumerate() {
        let ep = item_path(&field_path(path, "entries"), i);
        let input = multi_index(&e.input, n, p, &field_path(&ep, "input"))?;
        let output = multi_index(&e.output, n, n - 1, &field_path(&ep, "output"))?;
        table.push((input, output, polynomial(&e.polynomial, n, &field_path(&ep, "polynomial"))?));
    }
    StressField::from_entries(n, p, table).map_err(shape_err)
}

pub fn body_force(raw: &[RawBodyEntry], n: usize, p: usize, path: &str) -> ParseResult<BodyForceField> {
    let mut table = Vec::with_capacity(raw.len());
    for (i, e) in raw.iter().enumerate() {
        let ep = item_path(path, i);
        let input = multi_index(&e.input, n, p, &field_path(&ep, "input"))?;
        table.push((input, polynomial(&e.polynomial, n, &field_path(&ep, "polynomial"))?));
    }
    Ok(BodyForceField::from_entries(n, p, table).expect("validated entries"))
}

pub fn cauchy(raw: &[Vec<RawPolynomial>], path: &str) -> ParseResult<CauchyStress3D> {
    if raw.len() != 3 {
        return Err(ScenarioError::new(ErrorCode::DimensionMismatch, path, "Cauchy stress needs 3 rows"));
    }
    let mut rows = Vec::with_capacity(3);
    for (i, r) in raw.iter().enumerate() {
        let rp = item_path(path, i);
        if r.len() != 3 {
            return Err(ScenarioError::new(ErrorCode::DimensionMismatch, rp, "Cauchy stress rows need 3 entries"));
        }
        rows.push(
            r.iter()
                .enumerate()
                .map(|(j, p)| polynomial(p, 3, &item_path(&rp, j)))
                .collect::<ParseResult<Vec<_>>>()?,
        );
    }
    Ok(CauchyStress3D::new(rows).expect("validated 3x3"))
}

/// Deserialize a JSON value into a raw record, reporting the failing path.
pub fn from_value<T: for<'de> Deserialize<'de>>(value: &Value, path: &str) -> ParseResult<T> {
    serde_path_to_error::deserialize(value).map_err(|e| {
        let inner = e.path().to_string();
        let full = if inner == "." { path.to_string() } else { field_path(path, &inner) };
        ScenarioError::new(ErrorCode::BadField, full, e.into_inner().to_string())
    })
}

pub fn polynomial_to_json(p: &Polynomial) -> Value {
    Value::Array(
        p.terms()
            .rev()
            .map(|(m, c)| {
                serde_json::json!({
                    "exponents": m.exponents(),
                    "coefficient": format_rational(c),
                })
            })
            .collect(),
    )
}

pub fn form_to_json(f: &PolyForm) -> Value {
    let terms: Vec<Value> = f
        .components()
        .map(|(idx, c)| serde_json::json!({ "indices": idx.axes(), "polynomial": polynomial_to_json(c) }))
        .collect();
    serde_json::json!({ "n": f.ambient(), "degree": f.degree(), "terms": terms })
}
