//! JSON encodings shared by the command line and the tests.
//!
//! Rationals are strings `"p/q"` (or `"p"`), variables are `t:i:j` and `z:m`,
//! and objects have sorted keys, so equal values encode to equal bytes.

use canform_core::canonical::{CanonicalForm, PbwExpansion, RepForm, Report};
use canform_core::flags::{Equation, FlagChain};
use canform_core::freealg::{FreeElement, Word};
use canform_core::polyrat::{LinearForm, Monomial, Polynomial, RatFun, Var, Q};
use canform_core::roots::RootSystemData;
use canform_core::treediag::CorpusEntry;
use serde_json::{json, Map, Value};
use std::collections::BTreeMap;

#[derive(Debug, thiserror::Error)]
#[error("malformed JSON: {0}")]
pub struct FormatError(String);

fn bad(what: &str) -> FormatError {
    FormatError(what.into())
}

pub fn rational(q: &Q) -> Value {
    Value::String(q.to_string())
}

pub fn ratfun(f: &RatFun) -> Value {
    let num: Vec<Value> = f
        .numerator()
        .terms()
        .map(|(m, c)| {
            let exps: Map<String, Value> = m.pairs().iter().map(|(v, e)| (v.to_string(), json!(e))).collect();
            json!([exps, rational(c)])
        })
        .collect();
    let den: Vec<Value> = f.denominator().iter().map(|(form, m)| json!([form.to_string(), m])).collect();
    json!({ "num": num, "den": den })
}

pub fn ratfun_from(v: &Value) -> Result<RatFun, FormatError> {
    let mut num = Polynomial::zero();
    for term in v["num"].as_array().ok_or_else(|| bad("num"))? {
        let exps = term[0].as_object().ok_or_else(|| bad("monomial"))?;
        let mut pairs = Vec::new();
        for (var, e) in exps {
            let var: Var = var.parse().map_err(|_| bad("variable"))?;
            let e = e.as_u64().and_then(|e| u32::try_from(e).ok()).ok_or_else(|| bad("exponent"))?;
            pairs.push((var, e));
        }
        let c: Q = term[1].as_str().and_then(|s| s.parse().ok()).ok_or_else(|| bad("coefficient"))?;
        num.add_term(Monomial::from_pairs(pairs), c);
    }
    let mut den = BTreeMap::new();
    for factor in v["den"].as_array().ok_or_else(|| bad("den"))? {
        let form: LinearForm = factor[0].as_str().and_then(|s| s.parse().ok()).ok_or_else(|| bad("form"))?;
        let m = factor[1].as_u64().and_then(|m| u32::try_from(m).ok()).ok_or_else(|| bad("multiplicity"))?;
        *den.entry(form).or_insert(0) += m;
    }
    Ok(RatFun::from_parts(num, den))
}

pub fn free_element(e: &FreeElement) -> Value {
    let terms: Vec<Value> = e.terms().map(|(w, c)| json!([w.to_string(), rational(c)])).collect();
    json!({ "terms": terms })
}

pub fn free_element_from(v: &Value) -> Result<FreeElement, FormatError> {
    let mut out = FreeElement::zero();
    for term in v["terms"].as_array().ok_or_else(|| bad("terms"))? {
        let w: Word = term[0].as_str().and_then(|s| s.parse().ok()).ok_or_else(|| bad("word"))?;
        let c: Q = term[1].as_str().and_then(|s| s.parse().ok()).ok_or_else(|| bad("coefficient"))?;
        out.add_term(w, c);
    }
    Ok(out)
}

pub fn flag_chain(c: &FlagChain) -> Value {
    let eqs: Vec<Value> = c
        .equations()
        .iter()
        .map(|e| json!({ "lhs": e.lhs.to_string(), "rhs": e.rhs.map_or("0".to_string(), |v| v.to_string()) }))
        .collect();
    Value::Array(eqs)
}

pub fn flag_chain_from(v: &Value) -> Result<FlagChain, FormatError> {
    let mut eqs = Vec::new();
    for e in v.as_array().ok_or_else(|| bad("flag"))? {
        let lhs: Var = e["lhs"].as_str().and_then(|s| s.parse().ok()).ok_or_else(|| bad("lhs"))?;
        let rhs = match e["rhs"].as_str().ok_or_else(|| bad("rhs"))? {
            "0" => None,
            s => Some(s.parse().map_err(|_| bad("rhs"))?),
        };
        eqs.push(Equation::new(lhs, rhs));
    }
    FlagChain::new(eqs).map_err(|e| FormatError(e.to_string()))
}

pub fn report(r: &Report) -> Value {
    let params: Map<String, Value> = r.params.iter().map(|(k, v)| (k.clone(), json!(v))).collect();
    let counterexamples: Vec<Value> = r
        .counterexamples
        .iter()
        .map(|c| json!({ "case": c.case, "expected": c.expected, "got": c.got }))
        .collect();
    json!({
        "check": r.check,
        "params": params,
        "cases": r.cases,
        "status": r.status(),
        "counterexamples": counterexamples,
    })
}

fn anchor(a: Option<Var>) -> Value {
    a.map_or(json!("0"), |v| json!(v.to_string()))
}

pub fn canonical_form(form: &CanonicalForm) -> Value {
    let coeffs: Vec<Value> = form
        .coeffs()
        .iter()
        .map(|(j, f)| json!({ "J": j.to_string(), "word": Word::from_multi_index(j).to_string(), "coeff": ratfun(f) }))
        .collect();
    json!({
        "basis": "free",
        "weight": form.weight().to_string(),
        "anchor": anchor(form.anchor()),
        "coeffs": coeffs,
    })
}

fn roots(data: &RootSystemData) -> Value {
    Value::Array(data.roots().iter().map(|b| json!(b.kind.to_string())).collect())
}

pub fn pbw_expansion(data: &RootSystemData, e: &PbwExpansion) -> Value {
    let coeffs: Vec<Value> = e.coeffs.iter().map(|(p, f)| json!({ "p": p, "coeff": ratfun(f) })).collect();
    json!({
        "basis": "pbw",
        "type": e.lie_type.to_string(),
        "weight": e.weight.to_string(),
        "anchor": anchor(e.anchor),
        "roots": roots(data),
        "coeffs": coeffs,
    })
}

pub fn rep_form(data: &RootSystemData, r: &RepForm) -> Value {
    let coeffs: Vec<Value> = r.coeffs.iter().map(|(key, f)| json!({ "p": key, "coeff": ratfun(f) })).collect();
    json!({
        "basis": "pbw",
        "type": data.lie_type().to_string(),
        "weight": r.weight.to_string(),
        "anchors": r.anchors.iter().map(|z| z.to_string()).collect::<Vec<_>>(),
        "roots": roots(data),
        "coeffs": coeffs,
    })
}

pub fn corpus_entry(e: &CorpusEntry, value: &RatFun) -> Value {
    json!({ "line": e.line, "diagram": e.source, "value": ratfun(value) })
}
