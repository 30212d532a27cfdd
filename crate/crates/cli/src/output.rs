//! Canonical JSON and CSV rendering.
//!
//! JSON objects use serde_json's sorted map, so keys always come out in
//! lexicographic order; exact rationals become {"den": "...", "num": "..."}.

use ffcn_core::{BigRational, FourierTable, Poly};
use serde_json::{json, Map, Value};

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    Json,
    Csv,
}

pub fn rational(r: &BigRational) -> Value {
    json!({ "num": r.numer().to_string(), "den": r.denom().to_string() })
}

pub fn poly(p: &Poly) -> Value {
    Value::String(p.to_string())
}

/// Rows of a table, constant term (index 0) first.
pub fn table_rows(table: &FourierTable) -> Vec<(String, &BigRational)> {
    std::iter::once(("0".to_string(), &table.constant_term))
        .chain(table.coefficients.iter().map(|(p, v)| (p.to_string(), v)))
        .collect()
}

pub fn table(t: &FourierTable) -> Value {
    let rows: Vec<Value> = table_rows(t)
        .into_iter()
        .map(|(index, value)| json!({ "index": index, "value": rational(value) }))
        .collect();
    json!({
        "kind": t.kind.as_str(),
        "max_deg": t.max_deg,
        "constant_term": rational(&t.constant_term),
        "rows": rows,
    })
}

/// A finished command result: header plus body, optionally a table.
pub struct Document<'a> {
    pub command: &'static str,
    pub q: Option<u32>,
    pub seed: u64,
    pub body: Map<String, Value>,
    pub table: Option<&'a FourierTable>,
}

impl Document<'_> {
    pub fn render(&self, format: Format) -> String {
        match format {
            Format::Json => self.json(),
            Format::Csv => self.csv(),
        }
    }

    fn json(&self) -> String {
        let mut root = self.body.clone();
        root.insert("header".into(), json!({ "command": self.command, "q": self.q, "seed": self.seed }));
        let mut out = serde_json::to_string_pretty(&Value::Object(root)).expect("serializable");
        out.push('\n');
        out
    }

    fn csv(&self) -> String {
        let mut out = String::new();
        if let Some(t) = self.table {
            out.push_str("index,numerator,denominator\n");
            for (index, value) in table_rows(t) {
                out.push_str(&format!("{index},{},{}\n", value.numer(), value.denom()));
            }
            return out;
        }
        out.push_str("key,value\n");
        let mut flat = Vec::new();
        flatten("", &Value::Object(self.body.clone()), &mut flat);
        for (k, v) in flat {
            out.push_str(&format!("{},{}\n", csv_field(&k), csv_field(&v)));
        }
        out
    }
}

fn flatten(prefix: &str, value: &Value, out: &mut Vec<(String, String)>) {
    let join = |k: &str| if prefix.is_empty() { k.to_string() } else { format!("{prefix}.{k}") };
    match value {
        Value::Object(map) => {
            if let (Some(Value::String(n)), Some(Value::String(d)), 2) = (map.get("num"), map.get("den"), map.len()) {
                out.push((prefix.to_string(), if d == "1" { n.clone() } else { format!("{n}/{d}") }));
                return;
            }
            for (k, v) in map {
                flatten(&join(k), v, out);
            }
        }
        Value::Array(items) => {
            for (i, v) in items.iter().enumerate() {
                flatten(&join(&i.to_string()), v, out);
            }
        }
        Value::String(s) => out.push((prefix.to_string(), s.clone())),
        other => out.push((prefix.to_string(), other.to_string())),
    }
}

fn csv_field(s: &str) -> String {
    if s.contains([',', '"', '\n']) {
        format!("\"{}\"", s.replace('"', "\"\""))
    } else {
        s.to_string()
    }
}
