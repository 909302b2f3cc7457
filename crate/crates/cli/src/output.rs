use std::fmt::Write;

use faulsum_core::mp::{Complex, Real};
use faulsum_core::oracle::ConvergenceReport;
use serde_json::{json, Map, Value};

use crate::args::Format;

const ERROR_DIGITS: usize = 6;

/// A single evaluated quantity, as printed by every command except `report`.
#[derive(Debug, Clone)]
pub struct Evaluation {
    pub command: &'static str,
    pub inputs: Vec<(&'static str, String)>,
    pub value: Complex,
    pub est_error: Option<Real>,
    pub bound_kind: Option<&'static str>,
    pub terms_used: Option<usize>,
    pub formula_id: String,
    pub exact: Option<String>,
    pub shifted_to: Option<String>,
    pub coefficients: Vec<String>,
}

#[derive(Debug, Clone)]
pub struct Report {
    pub inputs: Vec<(&'static str, String)>,
    pub report: ConvergenceReport,
}

#[derive(Debug, Clone)]
pub enum Output {
    Eval(Evaluation),
    Report(Report),
}

pub fn render(out: &Output, format: Format, digits: usize) -> String {
    match (out, format) {
        (Output::Eval(e), Format::Text) => eval_text(e, digits),
        (Output::Eval(e), Format::Csv) => eval_csv(e, digits),
        (Output::Eval(e), Format::Json) => to_json_line(&eval_json(e, digits)),
        (Output::Report(r), Format::Text) => report_text(r, digits),
        (Output::Report(r), Format::Csv) => r.report.to_csv(digits),
        (Output::Report(r), Format::Json) => to_json_line(&report_json(r, digits)),
    }
}

fn to_json_line(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("json values always serialize");
    s.push('\n');
    s
}

fn complex_json(z: &Complex, digits: usize) -> Value {
    json!({ "re": z.re.to_sci_string(digits), "im": z.im.to_sci_string(digits) })
}

fn inputs_json(inputs: &[(&'static str, String)]) -> Value {
    Value::Object(inputs.iter().map(|(k, v)| (k.to_string(), Value::String(v.clone()))).collect())
}

fn opt_error(e: &Option<Real>) -> Option<String> {
    e.as_ref().map(|e| e.to_sci_string(ERROR_DIGITS))
}

fn eval_text(e: &Evaluation, digits: usize) -> String {
    let mut s = String::new();
    let _ = writeln!(s, "value        {}", e.value.to_sci_string(digits));
    let _ = writeln!(s, "est_error    {}", opt_error(&e.est_error).unwrap_or_else(|| "n/a".into()));
    if let Some(k) = e.bound_kind {
        let _ = writeln!(s, "bound        {k}");
    }
    match e.terms_used {
        Some(t) => {
            let _ = writeln!(s, "terms_used   {t}");
        }
        None => {
            let _ = writeln!(s, "terms_used   n/a");
        }
    }
    let _ = writeln!(s, "formula      {}", e.formula_id);
    if let Some(x) = &e.exact {
        let _ = writeln!(s, "exact        {x}");
    }
    if let Some(x) = &e.shifted_to {
        let _ = writeln!(s, "shifted_to   {x}");
    }
    if !e.coefficients.is_empty() {
        let _ = writeln!(s, "coefficients");
        for (k, c) in e.coefficients.iter().enumerate() {
            let _ = writeln!(s, "  {:>4}  {c}", k + 1);
        }
    }
    s
}

fn eval_csv(e: &Evaluation, digits: usize) -> String {
    format!(
        "formula_id,value_re,value_im,est_error,terms_used,exact,coefficients\n{},{},{},{},{},{},{}\n",
        e.formula_id,
        e.value.re.to_sci_string(digits),
        e.value.im.to_sci_string(digits),
        opt_error(&e.est_error).unwrap_or_default(),
        e.terms_used.map(|t| t.to_string()).unwrap_or_default(),
        e.exact.clone().unwrap_or_default(),
        e.coefficients.join(";"),
    )
}

fn eval_json(e: &Evaluation, digits: usize) -> Value {
    let mut m = Map::new();
    m.insert("command".into(), e.command.into());
    m.insert("inputs".into(), inputs_json(&e.inputs));
    m.insert("value".into(), complex_json(&e.value, digits));
    m.insert("est_error".into(), opt_error(&e.est_error).into());
    m.insert("bound_kind".into(), e.bound_kind.into());
    m.insert("terms_used".into(), e.terms_used.into());
    m.insert("formula_id".into(), e.formula_id.clone().into());
    m.insert("exact".into(), e.exact.clone().into());
    m.insert("shifted_to".into(), e.shifted_to.clone().into());
    m.insert("coefficients".into(), e.coefficients.clone().into());
    Value::Object(m)
}

fn report_text(r: &Report, digits: usize) -> String {
    let rep = &r.report;
    let mut s = String::new();
    let _ = writeln!(s, "oracle       {} {}", rep.oracle_kind.as_str(), rep.oracle_value.to_sci_string(digits));
    let _ = writeln!(s, "{:>5}  {:<w$}  abs_error", "K", "value", w = digits + 8);
    for row in &rep.rows {
        match &row.outcome {
            Ok((v, e)) => {
                let _ = writeln!(
                    s,
                    "{:>5}  {:<w$}  {}",
                    row.k,
                    v.to_sci_string(digits),
                    e.to_sci_string(ERROR_DIGITS),
                    w = digits + 8
                );
            }
            Err(err) => {
                let _ = writeln!(s, "{:>5}  failed: {err}", row.k);
            }
        }
    }
    s
}

fn report_json(r: &Report, digits: usize) -> Value {
    let rep = &r.report;
    let rows: Vec<Value> = rep
        .rows
        .iter()
        .map(|row| {
            let (value, err, failure) = match &row.outcome {
                Ok((v, e)) => (complex_json(v, digits), Value::String(e.to_sci_string(ERROR_DIGITS)), Value::Null),
                Err(e) => (Value::Null, Value::Null, Value::String(e.to_string())),
            };
            let mut m = Map::new();
            m.insert("k".into(), row.k.into());
            m.insert("value".into(), value);
            m.insert("abs_error".into(), err);
            m.insert("error".into(), failure);
            Value::Object(m)
        })
        .collect();
    let mut m = Map::new();
    m.insert("command".into(), "report".into());
    m.insert("inputs".into(), inputs_json(&r.inputs));
    m.insert("oracle_kind".into(), rep.oracle_kind.as_str().into());
    m.insert("oracle_value".into(), complex_json(&rep.oracle_value, digits));
    m.insert("rows".into(), rows.into());
    Value::Object(m)
}
