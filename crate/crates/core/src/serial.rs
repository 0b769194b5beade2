//! JSON shapes shared by scenario payloads and reports.
//!
//! Scalars are strings such as `"-3/2"` or `"1/2-2i"` (plain integers are
//! accepted too). Multivectors and forms are maps from one-based index sets
//! to coefficients: `{"[]": "1", "[1,2]": "x3^2 - 1/2"}`.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::dirac::ReductionDatum;
use crate::error::{Error, Result};
use crate::exterior::{blade_indices, MultiElement, Side};
use crate::polyform::{Poly, PolyField, PolyForm};
use crate::scalar::Scalar;
use crate::subspace::{Ambient, Subspace};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum ScalarJson {
    Int(i64),
    Str(String),
}

impl From<&str> for ScalarJson {
    fn from(s: &str) -> Self {
        ScalarJson::Str(s.to_string())
    }
}

pub type RowsJson = Vec<Vec<ScalarJson>>;
pub type TermsJson = BTreeMap<String, ScalarJson>;
pub type FormJson = BTreeMap<String, String>;

fn at(path: &str, e: Error) -> Error {
    match e {
        Error::Parse(m) => Error::Parse(format!("{path}: {m}")),
        other => Error::Parse(format!("{path}: {other}")),
    }
}

pub fn scalar<F: Scalar>(v: &ScalarJson, path: &str) -> Result<F> {
    match v {
        ScalarJson::Int(i) => Ok(F::from_int(*i)),
        ScalarJson::Str(s) => F::parse(s).map_err(|e| at(path, e)),
    }
}

pub fn vector<F: Scalar>(v: &[ScalarJson], len: usize, path: &str) -> Result<Vec<F>> {
    if v.len() != len {
        return Err(Error::Parse(format!("{path}: expected {len} entries, got {}", v.len())));
    }
    v.iter().enumerate().map(|(i, x)| scalar(x, &format!("{path}[{i}]"))).collect()
}

pub fn rows<F: Scalar>(v: &[Vec<ScalarJson>], len: usize, path: &str) -> Result<Vec<Vec<F>>> {
    v.iter().enumerate().map(|(i, r)| vector(r, len, &format!("{path}[{i}]"))).collect()
}

pub fn subspace<F: Scalar>(ambient: Ambient, v: &[Vec<ScalarJson>], path: &str) -> Result<Subspace<F>> {
    Subspace::span(ambient, rows(v, ambient.total_dim(), path)?).map_err(|e| at(path, e))
}

/// `"[1,3]"` → `[0, 2]`.
pub fn index_set(key: &str, n: usize) -> Result<Vec<usize>> {
    let inner = key
        .trim()
        .strip_prefix('[')
        .and_then(|s| s.strip_suffix(']'))
        .ok_or_else(|| Error::Parse(format!("index set {key:?} must look like [1,2]")))?;
    let mut idx = Vec::new();
    for part in inner.split(',').map(str::trim).filter(|s| !s.is_empty()) {
        let i: usize = part.parse().map_err(|_| Error::Parse(format!("bad index {part:?} in {key:?}")))?;
        if i == 0 || i > n {
            return Err(Error::Parse(format!("index {i} in {key:?} outside 1..{n}")));
        }
        idx.push(i - 1);
    }
    Ok(idx)
}

pub fn index_key(b: u32) -> String {
    let idx: Vec<String> = blade_indices(b).iter().map(|i| (i + 1).to_string()).collect();
    format!("[{}]", idx.join(","))
}

pub fn element<F: Scalar>(terms: &TermsJson, n: usize, side: Side, path: &str) -> Result<MultiElement<F>> {
    let mut out = MultiElement::zero(n, side)?;
    for (k, v) in terms {
        let p = format!("{path}.{k}");
        let idx = index_set(k, n).map_err(|e| at(&p, e))?;
        let c: F = scalar(v, &p)?;
        out = out.add(&MultiElement::basis(n, side, &idx)?.scale(&c))?;
    }
    Ok(out)
}

pub fn form<F: Scalar>(terms: &FormJson, n: usize, path: &str) -> Result<PolyForm<F>> {
    PolyForm::from_strings(n, terms).map_err(|e| at(path, e))
}

pub fn poly<F: Scalar>(s: &str, n: usize, path: &str) -> Result<Poly<F>> {
    Poly::parse(n, s).map_err(|e| at(path, e))
}

pub fn field<F: Scalar>(comps: &[String], n: usize, path: &str) -> Result<PolyField<F>> {
    if comps.len() != n {
        return Err(Error::Parse(format!("{path}: expected {n} components, got {}", comps.len())));
    }
    let ps = comps.iter().enumerate().map(|(i, s)| poly(s, n, &format!("{path}[{i}]"))).collect::<Result<_>>()?;
    PolyField::new(ps).map_err(|e| at(path, e))
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DatumJson {
    /// Spanning vectors of `T_xN`.
    pub tangent: RowsJson,
    #[serde(default)]
    pub generators: RowsJson,
    #[serde(default)]
    pub moment: RowsJson,
    #[serde(default)]
    pub b: Option<TermsJson>,
    #[serde(default)]
    pub delta: Option<TermsJson>,
}

impl DatumJson {
    pub fn build<F: Scalar>(&self, m: usize, path: &str) -> Result<ReductionDatum<F>> {
        let tangent = subspace(Ambient::plain(m)?, &self.tangent, &format!("{path}.tangent"))?;
        let generators = rows(&self.generators, m, &format!("{path}.generators"))?;
        let moment = rows(&self.moment, m, &format!("{path}.moment"))?;
        if moment.len() != generators.len() {
            return Err(Error::Parse(format!("{path}.moment: one covector per generator is required")));
        }
        let b = self.b.as_ref().map(|t| element(t, m, Side::Covector, &format!("{path}.b"))).transpose()?;
        let mut d = ReductionDatum::new(tangent, generators, moment, b).map_err(|e| at(path, e))?;
        if let Some(t) = &self.delta {
            let delta = element(t, m, Side::Vector, &format!("{path}.delta"))?;
            d = d.with_delta(delta).map_err(|e| at(&format!("{path}.delta"), e))?;
        }
        Ok(d)
    }
}

pub fn render_scalar<F: Scalar>(c: &F) -> Value {
    Value::String(c.render())
}

pub fn render_rows<F: Scalar>(rows: &[Vec<F>]) -> Value {
    Value::Array(rows.iter().map(|r| Value::Array(r.iter().map(render_scalar).collect())).collect())
}

/// Canonical echelon basis.
pub fn render_subspace<F: Scalar>(s: &Subspace<F>) -> Value {
    json!({ "dim": s.dim(), "basis": render_rows(&s.rows()) })
}

pub fn render_element<F: Scalar>(e: &MultiElement<F>) -> Value {
    Value::Object(e.terms().iter().map(|(b, c)| (index_key(*b), render_scalar(c))).collect())
}

pub fn render_form<F: Scalar>(f: &PolyForm<F>) -> Value {
    Value::Object(f.to_strings().into_iter().map(|(k, v)| (k, Value::String(v))).collect())
}
