//! Machine-readable output records.
//!
//! Every subcommand emits a stream of flat records, as JSON objects (one per
//! line) or as RFC-4180 CSV with a header row. Field order is fixed by
//! insertion so identical invocations produce byte-identical output. Exact
//! rationals print as `num/den` strings (bare numerator when the denominator
//! is 1); floats print with 17 significant digits; enclosures serialize as
//! `{"lo": ..., "hi": ...}` in JSON and as `_lo`/`_hi` column pairs in CSV.

use std::io::Write;

use qgheat_core::interval::CertifiedValue;
use qgheat_core::rational::{format_rational, Rational};

#[derive(Debug, Clone)]
pub enum Value {
    Str(String),
    UInt(u64),
    Float(f64),
    Rational(String),
    Enclosure(f64, f64),
    Bool(bool),
}

impl Value {
    pub fn rational(r: &Rational) -> Self {
        Value::Rational(format_rational(r))
    }

    pub fn enclosure(v: &CertifiedValue) -> Self {
        Value::Enclosure(v.lo, v.hi)
    }
}

/// 17 significant digits, emitted in a JSON-legal exponent form.
fn fmt_float(x: f64) -> String {
    if x.is_finite() {
        format!("{x:.16e}")
    } else if x.is_nan() {
        "\"nan\"".into()
    } else if x > 0.0 {
        "\"inf\"".into()
    } else {
        "\"-inf\"".into()
    }
}

fn json_escape(s: &str) -> String {
    let mut out = String::with_capacity(s.len() + 2);
    for ch in s.chars() {
        match ch {
            '"' => out.push_str("\\\""),
            '\\' => out.push_str("\\\\"),
            '\n' => out.push_str("\\n"),
            '\r' => out.push_str("\\r"),
            '\t' => out.push_str("\\t"),
            c if (c as u32) < 0x20 => out.push_str(&format!("\\u{:04x}", c as u32)),
            c => out.push(c),
        }
    }
    out
}

fn json_value(v: &Value) -> String {
    match v {
        Value::Str(s) => format!("\"{}\"", json_escape(s)),
        Value::UInt(u) => u.to_string(),
        Value::Float(x) => fmt_float(*x),
        Value::Rational(s) => format!("\"{}\"", json_escape(s)),
        Value::Enclosure(lo, hi) => {
            format!("{{\"lo\":{},\"hi\":{}}}", fmt_float(*lo), fmt_float(*hi))
        }
        Value::Bool(b) => b.to_string(),
    }
}

fn csv_quote(field: &str) -> String {
    if field.contains(',') || field.contains('"') || field.contains('\n') || field.contains('\r') {
        format!("\"{}\"", field.replace('"', "\"\""))
    } else {
        field.to_string()
    }
}

fn csv_cells(v: &Value) -> Vec<String> {
    match v {
        Value::Str(s) => vec![csv_quote(s)],
        Value::UInt(u) => vec![u.to_string()],
        Value::Float(x) => vec![fmt_float(*x).trim_matches('"').to_string()],
        Value::Rational(s) => vec![csv_quote(s)],
        Value::Enclosure(lo, hi) => vec![
            fmt_float(*lo).trim_matches('"').to_string(),
            fmt_float(*hi).trim_matches('"').to_string(),
        ],
        Value::Bool(b) => vec![b.to_string()],
    }
}

fn csv_headers(key: &str, v: &Value) -> Vec<String> {
    match v {
        Value::Enclosure(..) => vec![format!("{key}_lo"), format!("{key}_hi")],
        _ => vec![key.to_string()],
    }
}

/// One output row: the subcommand, its resolved inputs, its results, and
/// whether everything in it is certified.
#[derive(Debug, Clone)]
pub struct Record {
    pub command: &'static str,
    pub inputs: Vec<(&'static str, Value)>,
    pub results: Vec<(&'static str, Value)>,
    pub certified: bool,
}

impl Record {
    pub fn new(command: &'static str) -> Self {
        Self {
            command,
            inputs: Vec::new(),
            results: Vec::new(),
            certified: true,
        }
    }

    pub fn input(mut self, key: &'static str, value: Value) -> Self {
        self.inputs.push((key, value));
        self
    }

    pub fn result(mut self, key: &'static str, value: Value) -> Self {
        self.results.push((key, value));
        self
    }

    pub fn uncertified(mut self) -> Self {
        self.certified = false;
        self
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    Json,
    Csv,
}

pub fn emit(records: &[Record], format: Format, out: &mut impl Write) -> std::io::Result<()> {
    match format {
        Format::Json => {
            for r in records {
                let mut line = String::new();
                line.push_str(&format!("{{\"command\":\"{}\"", r.command));
                line.push_str(",\"inputs\":{");
                for (i, (k, v)) in r.inputs.iter().enumerate() {
                    if i > 0 {
                        line.push(',');
                    }
                    line.push_str(&format!("\"{}\":{}", k, json_value(v)));
                }
                line.push_str("},\"results\":{");
                for (i, (k, v)) in r.results.iter().enumerate() {
                    if i > 0 {
                        line.push(',');
                    }
                    line.push_str(&format!("\"{}\":{}", k, json_value(v)));
                }
                line.push_str(&format!("}},\"certified\":{}}}", r.certified));
                writeln!(out, "{line}")?;
            }
        }
        Format::Csv => {
            if records.is_empty() {
                return Ok(());
            }
            let first = &records[0];
            let mut headers = vec!["command".to_string()];
            for (k, v) in first.inputs.iter().chain(&first.results) {
                headers.extend(csv_headers(k, v));
            }
            headers.push("certified".to_string());
            writeln!(out, "{}", headers.join(","))?;
            for r in records {
                let mut cells = vec![r.command.to_string()];
                for (_, v) in r.inputs.iter().chain(&r.results) {
                    cells.extend(csv_cells(v));
                }
                cells.push(r.certified.to_string());
                writeln!(out, "{}", cells.join(","))?;
            }
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn json_shape() {
        let r = Record::new("demo")
            .input("n", Value::UInt(2))
            .result("lambda", Value::Rational("-1/2".into()))
            .result("enc", Value::Enclosure(1.0, 2.0));
        let mut buf = Vec::new();
        emit(&[r], Format::Json, &mut buf).unwrap();
        let line = String::from_utf8(buf).unwrap();
        assert!(line.contains("\"command\":\"demo\""));
        assert!(line.contains("\"lambda\":\"-1/2\""));
        assert!(line.contains("\"enc\":{\"lo\":1.0000000000000000e0,\"hi\":2.0000000000000000e0}"));
        assert!(line.ends_with("\"certified\":true}\n"));
    }

    #[test]
    fn csv_shape() {
        let r = Record::new("demo")
            .input("n", Value::UInt(2))
            .result("enc", Value::Enclosure(1.0, 2.0));
        let mut buf = Vec::new();
        emit(&[r.clone(), r], Format::Csv, &mut buf).unwrap();
        let text = String::from_utf8(buf).unwrap();
        let mut lines = text.lines();
        assert_eq!(lines.next().unwrap(), "command,n,enc_lo,enc_hi,certified");
        assert_eq!(lines.clone().count(), 2);
    }

    #[test]
    fn csv_quoting() {
        assert_eq!(csv_quote("plain"), "plain");
        assert_eq!(csv_quote("a,b"), "\"a,b\"");
        assert_eq!(csv_quote("say \"hi\""), "\"say \"\"hi\"\"\"");
    }
}
