//! Report emission: JSON and CSV with a fixed schema and 17-significant-digit
//! numbers, so doubles round-trip exactly and repeated runs are
//! byte-identical.
//!
//! JSON: a single array of objects with fields
//! {identity, params, lhs, rhs, abs_err, rel_err, tol, passed, note};
//! CSV uses the same column order with params flattened to `k=v;k=v`.

use crate::error::{Error, Result};
use crate::identities::{ParamSet, VerificationReport};

/// 17 significant digits: exact f64 round-trip.
pub(crate) fn fmt_f64(v: f64) -> String {
    format!("{v:.16e}")
}

fn param_entries(p: &ParamSet) -> Vec<(&'static str, String)> {
    let mut out = Vec::new();
    if let Some(a) = p.a {
        out.push(("a", fmt_f64(a)));
    }
    if let Some(b) = p.b {
        out.push(("b", fmt_f64(b)));
    }
    if let Some(c) = p.c {
        out.push(("c", fmt_f64(c)));
    }
    if let Some(n) = p.n {
        out.push(("n", n.to_string()));
    }
    if let Some(s) = p.s {
        out.push(("s", fmt_f64(s)));
    }
    if let Some(l) = p.lambda {
        out.push(("lambda", fmt_f64(l)));
    }
    out
}

fn json_escape(s: &str) -> String {
    let mut out = String::with_capacity(s.len());
    for ch in s.chars() {
        match ch {
            '"' => out.push_str("\\\""),
            '\\' => out.push_str("\\\\"),
            '\n' => out.push_str("\\n"),
            c if (c as u32) < 0x20 => out.push_str(&format!("\\u{:04x}", c as u32)),
            c => out.push(c),
        }
    }
    out
}

/// Serialize reports as a single JSON array with stable field order.
pub fn reports_to_json(reports: &[VerificationReport]) -> String {
    let mut out = String::from("[\n");
    for (i, r) in reports.iter().enumerate() {
        let params = param_entries(&r.params)
            .into_iter()
            .map(|(k, v)| format!("\"{k}\": {v}"))
            .collect::<Vec<_>>()
            .join(", ");
        out.push_str(&format!(
            "  {{\"identity\": \"{}\", \"params\": {{{}}}, \"lhs\": {}, \"rhs\": {}, \"abs_err\": {}, \"rel_err\": {}, \"tol\": {}, \"passed\": {}, \"note\": \"{}\"}}{}\n",
            r.identity,
            params,
            fmt_f64(r.lhs),
            fmt_f64(r.rhs),
            fmt_f64(r.abs_err),
            fmt_f64(r.rel_err),
            fmt_f64(r.tol),
            r.passed,
            json_escape(&r.note),
            if i + 1 < reports.len() { "," } else { "" }
        ));
    }
    out.push_str("]\n");
    out
}

/// Serialize reports as CSV in the same column order as the JSON fields.
pub fn reports_to_csv(reports: &[VerificationReport]) -> String {
    let mut out = String::from("identity,params,lhs,rhs,abs_err,rel_err,tol,passed,note\n");
    for r in reports {
        let params = param_entries(&r.params)
            .into_iter()
            .map(|(k, v)| format!("{k}={v}"))
            .collect::<Vec<_>>()
            .join(";");
        out.push_str(&format!(
            "{},{},{},{},{},{},{},{},{}\n",
            r.identity,
            params,
            fmt_f64(r.lhs),
            fmt_f64(r.rhs),
            fmt_f64(r.abs_err),
            fmt_f64(r.rel_err),
            fmt_f64(r.tol),
            r.passed,
            r.note.replace(',', ";"),
        ));
    }
    out
}

/// A report read back from JSON; used by the round-trip checks and by
/// consumers of the wire format.
#[derive(Debug, Clone, serde::Deserialize)]
pub struct ParsedReport {
    pub identity: String,
    pub params: std::collections::BTreeMap<String, serde_json::Value>,
    pub lhs: f64,
    pub rhs: f64,
    pub abs_err: f64,
    pub rel_err: f64,
    pub tol: f64,
    pub passed: bool,
    pub note: String,
}

impl ParsedReport {
    pub fn from_json_array(text: &str) -> Result<Vec<ParsedReport>> {
        serde_json::from_str(text).map_err(|e| Error::Config(format!("invalid report JSON: {e}")))
    }
}
