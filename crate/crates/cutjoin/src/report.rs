//! Output formats. Every command result renders as plain text, CSV, or a
//! versioned JSON document in which each number is a string `"p/q"`.

use cutjoin_core::{GradedPoly, Rational};
use serde_json::{json, Value};

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    Text,
    Json,
    Csv,
}

/// A command result that can be printed in every format.
pub trait Render {
    /// Name of the command, recorded in the JSON envelope.
    fn kind(&self) -> &'static str;
    fn text(&self) -> String;
    fn csv(&self) -> String;
    fn json_body(&self) -> Value;

    fn json(&self) -> Value {
        let mut body = self.json_body();
        if let Value::Object(map) = &mut body {
            map.insert("schema_version".into(), json!(SCHEMA_VERSION));
            map.insert("kind".into(), json!(self.kind()));
        }
        body
    }

    fn render(&self, format: Format) -> String {
        match format {
            Format::Text => self.text(),
            Format::Csv => self.csv(),
            Format::Json => {
                let mut s = serde_json::to_string_pretty(&self.json()).expect("json renders");
                s.push('\n');
                s
            }
        }
    }
}

/// `"p/q"`, with an explicit denominator even for integers.
pub fn rational_json(r: &Rational) -> Value {
    Value::String(format!("{}/{}", r.numer(), r.denom()))
}

/// Terms as `[{"monomial": "t1^2*s1", "coeff": "p/q"}, …]` in canonical
/// order.
pub fn poly_json(p: &GradedPoly) -> Value {
    Value::Array(
        p.iter()
            .map(|(m, c)| json!({ "monomial": m.to_string(), "coeff": rational_json(c) }))
            .collect(),
    )
}

/// Quotes a CSV field when needed.
pub fn csv_field(s: &str) -> String {
    if s.contains([',', '"', '\n']) {
        format!("\"{}\"", s.replace('"', "\"\""))
    } else {
        s.to_string()
    }
}
