use std::fmt::Write;

use knotcalc_core::error::Diagnostic;
use knotcalc_core::scalar::{Interval, IntervalCtx};
use knotcalc_core::Error as CoreError;
use num_bigint::BigInt;
use serde::Serialize;
use serde_json::{json, Map, Value};

#[derive(Debug)]
pub enum Failure {
    Input(String),
    Certificate(String),
}

impl Failure {
    pub fn exit_code(&self) -> i32 {
        match self {
            Failure::Input(_) => 1,
            Failure::Certificate(_) => 3,
        }
    }
}

pub fn core<E: Into<CoreError>>(e: E) -> Failure {
    let e: CoreError = e.into();
    if e.is_certificate() {
        Failure::Certificate(e.to_string())
    } else {
        Failure::Input(e.to_string())
    }
}

#[derive(Debug, Serialize)]
pub struct Report {
    pub command: &'static str,
    pub inputs: Map<String, Value>,
    pub outputs: Map<String, Value>,
    pub certificates: Vec<String>,
    pub diagnostics: Vec<Value>,
}

impl Report {
    pub fn new(command: &'static str) -> Self {
        Report { command, inputs: Map::new(), outputs: Map::new(), certificates: Vec::new(), diagnostics: Vec::new() }
    }

    pub fn input(&mut self, key: &str, v: impl Into<Value>) {
        self.inputs.insert(key.into(), v.into());
    }

    pub fn output(&mut self, key: &str, v: impl Into<Value>) {
        self.outputs.insert(key.into(), v.into());
    }

    /// Records `name` if `holds`, otherwise fails with a certificate error.
    pub fn certify(&mut self, name: &str, holds: bool) -> Result<(), Failure> {
        if holds {
            self.certificates.push(name.to_string());
            Ok(())
        } else {
            Err(Failure::Certificate(format!("certificate violated: {name}")))
        }
    }

    pub fn diagnose(&mut self, severity: &str, item: Option<&str>, message: &str) {
        let mut d = json!({ "severity": severity, "message": message });
        if let Some(item) = item {
            d["item"] = json!(item);
        }
        self.diagnostics.push(d);
    }

    pub fn diagnose_all(&mut self, diags: &[Diagnostic]) {
        for d in diags {
            self.diagnose("error", Some(&d.item), &d.message);
        }
    }

    pub fn fail(&mut self, f: &Failure) {
        let (kind, msg) = match f {
            Failure::Input(m) => ("input", m),
            Failure::Certificate(m) => ("certificate", m),
        };
        self.diagnostics.push(json!({ "severity": "error", "kind": kind, "message": msg }));
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        writeln!(out, "command: {}", self.command).unwrap();
        for (section, map) in [("input", &self.inputs), ("output", &self.outputs)] {
            for (k, v) in map {
                writeln!(out, "{section} {k}: {}", flat(v)).unwrap();
            }
        }
        for c in &self.certificates {
            writeln!(out, "verified: {c}").unwrap();
        }
        for d in &self.diagnostics {
            let item = d.get("item").and_then(Value::as_str).map(|i| format!("{i}: ")).unwrap_or_default();
            writeln!(out, "{}: {item}{}", flat(&d["severity"]), flat(&d["message"])).unwrap();
        }
        out
    }
}

fn flat(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        other => other.to_string(),
    }
}

/// Exact integer: a JSON number when it fits in 64 bits, else a string.
pub fn big(v: &BigInt) -> Value {
    match i64::try_from(v) {
        Ok(small) => json!(small),
        Err(_) => json!(v.to_string()),
    }
}

pub fn bigs(vs: &[BigInt]) -> Value {
    Value::Array(vs.iter().map(big).collect())
}

/// Certified enclosure with outward-rounded decimal endpoints.
pub fn real(v: &Interval, ctx: &IntervalCtx) -> Value {
    let sig = ctx.digits() as usize;
    json!({
        "lower": v.lower_decimal(sig, ctx),
        "upper": v.upper_decimal(sig, ctx),
        "approx": v.mid_decimal(17, ctx),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use knotcalc_core::error::{LatticeError, LinalgError};

    #[test]
    fn exit_codes_follow_failure_kind() {
        assert_eq!(core(LinalgError::Certificate("det".into())).exit_code(), 3);
        assert_eq!(core(LatticeError::Certificate("phi".into())).exit_code(), 3);
        assert_eq!(core(LatticeError::BadDenominator("0".into())).exit_code(), 1);
        let mut r = Report::new("snf");
        assert!(r.certify("holds", true).is_ok());
        let f = r.certify("fails", false).unwrap_err();
        assert_eq!(f.exit_code(), 3);
        r.fail(&f);
        assert_eq!(r.certificates, ["holds"]);
        assert_eq!(r.diagnostics.len(), 1);
    }
}
