//! Output documents: `{meta, data, checks}` as JSON, or the data rows as CSV.
//!
//! Floats are written with 17 significant digits so that output is
//! byte-for-byte reproducible; non-finite values become JSON null.

use std::str::FromStr;

use hyplevy::params::HypParams;
use serde_json::{Map, Number, Value};

pub type Row = Vec<(&'static str, Value)>;

pub fn num(x: f64) -> Value {
    if x.is_finite() {
        Number::from_str(&format!("{x:.16e}"))
            .map(Value::Number)
            .unwrap_or(Value::Null)
    } else {
        Value::Null
    }
}

pub fn opt(x: Option<f64>) -> Value {
    x.map_or(Value::Null, num)
}

pub fn text(s: impl Into<String>) -> Value {
    Value::String(s.into())
}

#[derive(Debug, Default)]
pub struct Report {
    pub meta: Vec<(&'static str, Value)>,
    pub data: Vec<Row>,
    pub checks: Vec<(&'static str, Value)>,
    /// Any check failed; the process exits with status 2.
    pub failed: bool,
}

impl Report {
    pub fn check(&mut self, name: &'static str, passed: bool) {
        self.failed |= !passed;
        self.checks.push((name, Value::Bool(passed)));
    }

    pub fn note(&mut self, name: &'static str, value: Value) {
        self.checks.push((name, value));
    }
}

fn params_value(p: &HypParams) -> Value {
    let mut m = Map::new();
    m.insert("beta".into(), num(p.beta));
    m.insert("gamma".into(), num(p.gamma));
    m.insert("beta_hat".into(), num(p.beta_hat));
    m.insert("gamma_hat".into(), num(p.gamma_hat));
    Value::Object(m)
}

fn object(pairs: &[(&'static str, Value)]) -> Value {
    Value::Object(
        pairs
            .iter()
            .map(|(k, v)| ((*k).to_owned(), v.clone()))
            .collect(),
    )
}

pub fn to_json(report: &Report, p: &HypParams, regime: &str) -> String {
    let mut meta = Map::new();
    meta.insert("params".into(), params_value(p));
    meta.insert("regime".into(), text(regime));
    meta.insert("version".into(), text(env!("CARGO_PKG_VERSION")));
    for (k, v) in &report.meta {
        meta.insert((*k).to_owned(), v.clone());
    }
    let mut doc = Map::new();
    doc.insert("meta".into(), Value::Object(meta));
    doc.insert(
        "data".into(),
        Value::Array(report.data.iter().map(|r| object(r)).collect()),
    );
    doc.insert("checks".into(), object(&report.checks));
    let mut s = serde_json::to_string_pretty(&Value::Object(doc)).expect("serializable");
    s.push('\n');
    s
}

fn cell(v: &Value) -> String {
    match v {
        Value::Null => String::new(),
        Value::String(s) => s.clone(),
        other => other.to_string(),
    }
}

pub fn to_csv(report: &Report) -> String {
    let mut w = csv::Writer::from_writer(Vec::new());
    if let Some(first) = report.data.first() {
        w.write_record(first.iter().map(|(k, _)| *k))
            .expect("in-memory write");
        for row in &report.data {
            w.write_record(row.iter().map(|(_, v)| cell(v)))
                .expect("in-memory write");
        }
    }
    String::from_utf8(w.into_inner().expect("in-memory flush")).expect("utf-8")
}
