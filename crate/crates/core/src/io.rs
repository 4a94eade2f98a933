//! JSON file formats: form files and log specs. Serialization is canonical
//! (terms ordered by index tuple, polynomials in their canonical text), so a
//! serialize/parse/serialize cycle is byte-identical.

use std::sync::Arc;

use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::extalg::{DifferentialForm, Idx};
use crate::field::FieldSpec;
use crate::foliation::LogPresentation;
use crate::frobenius::PCurvatureReport;
use crate::poly::Polynomial;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FieldJson {
    pub p: u32,
    pub k: u32,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub modulus: Option<Vec<u32>>,
}

impl FieldJson {
    pub fn of(field: &FieldSpec) -> FieldJson {
        FieldJson {
            p: field.characteristic(),
            k: field.degree(),
            modulus: (field.degree() > 1).then(|| field.modulus().to_vec()),
        }
    }

    pub fn build(&self) -> Result<Arc<FieldSpec>> {
        match &self.modulus {
            None => FieldSpec::new(self.p, self.k),
            Some(m) => {
                let f = FieldSpec::with_modulus(self.p, m)?;
                if f.degree() != self.k {
                    return Err(Error::Parse(format!("modulus has degree {}, but k = {}", f.degree(), self.k)));
                }
                Ok(f)
            }
        }
    }
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct TermJson {
    idx: Vec<usize>,
    coeff: String,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct FormFile {
    field: FieldJson,
    nvars: usize,
    q: usize,
    terms: Vec<TermJson>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct LogSpec {
    field: FieldJson,
    nvars: usize,
    lambdas: Vec<String>,
    factors: Vec<String>,
}

fn json_error(e: serde_json::Error) -> Error {
    Error::Parse(e.to_string())
}

fn to_pretty<T: Serialize>(v: &T) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("serializable");
    s.push('\n');
    s
}

pub fn form_to_json(form: &DifferentialForm) -> String {
    let file = FormFile {
        field: FieldJson::of(form.field()),
        nvars: form.nvars(),
        q: form.grade(),
        terms: form
            .terms()
            .map(|(idx, c)| TermJson { idx: idx.iter().map(|&i| i as usize).collect(), coeff: c.to_string() })
            .collect(),
    };
    to_pretty(&file)
}

pub fn form_from_json(text: &str) -> Result<DifferentialForm> {
    let file: FormFile = serde_json::from_str(text).map_err(json_error)?;
    let field = file.field.build()?;
    let mut seen = std::collections::BTreeSet::new();
    let mut terms = Vec::with_capacity(file.terms.len());
    for t in &file.terms {
        if t.idx.iter().any(|&i| i >= file.nvars) || t.idx.windows(2).any(|w| w[0] >= w[1]) || t.idx.len() != file.q {
            return Err(Error::Parse(format!("index tuple {:?} is not strictly increasing of length {} below {}", t.idx, file.q, file.nvars)));
        }
        if !seen.insert(t.idx.clone()) {
            return Err(Error::Parse(format!("index tuple {:?} appears twice", t.idx)));
        }
        let c = Polynomial::parse(&field, file.nvars, &t.coeff)?;
        terms.push((t.idx.iter().map(|&i| i as u8).collect::<Idx>(), c));
    }
    DifferentialForm::from_terms(&field, file.nvars, file.q, terms)
}

pub fn log_to_json(l: &LogPresentation) -> String {
    let f = l.field();
    let spec = LogSpec {
        field: FieldJson::of(f),
        nvars: l.nvars(),
        lambdas: l.lambdas().iter().map(|&x| f.format(x)).collect(),
        factors: l.factors().iter().map(|g| g.to_string()).collect(),
    };
    to_pretty(&spec)
}

pub fn log_from_json(text: &str) -> Result<LogPresentation> {
    let spec: LogSpec = serde_json::from_str(text).map_err(json_error)?;
    let field = spec.field.build()?;
    let lambdas = spec.lambdas.iter().map(|s| field.parse(s)).collect::<Result<_>>()?;
    let factors = spec.factors.iter().map(|s| Polynomial::parse(&field, spec.nvars, s)).collect::<Result<_>>()?;
    LogPresentation::new(lambdas, factors)
}

/// True when `text` looks like a log spec rather than a form file.
pub fn is_log_spec(text: &str) -> bool {
    serde_json::from_str::<Value>(text).map(|v| v.get("lambdas").is_some()).unwrap_or(false)
}

pub fn pcurvature_to_value(rep: &PCurvatureReport) -> Value {
    json!({
        "max_degree": rep.max_degree,
        "foliation_degree": rep.foliation_degree,
        "values": rep.values.iter().map(|(v, val)| json!({
            "field": v.components().iter().map(|c| c.to_string()).collect::<Vec<_>>(),
            "value": val.to_string(),
        })).collect::<Vec<_>>(),
        "divisor_poly": rep.divisor_poly.as_ref().map(|g| g.to_string()),
        "divisor_degree": rep.divisor_degree,
        "inferred_pkernel_degree": rep.inferred_pkernel_degree,
        "p_closed_up_to_degree": rep.p_closed_up_to_degree,
    })
}
