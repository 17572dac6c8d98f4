//! The table document and its JSON, CSV and pretty renderings.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use genstirling::{Complex64, ExactScalar, TriangularTable};
use serde::{Deserialize, Serialize};

use crate::config::Format;
use crate::error::{CliError, CliResult};

pub const SCHEMA_VERSION: u32 = 1;

/// A triangular table with the parameters it was computed from.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TableDocument {
    pub schema_version: u32,
    pub family: String,
    pub params: BTreeMap<String, String>,
    pub rows: Vec<Entry>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Entry {
    pub n: usize,
    pub k: usize,
    pub value: Value,
}

/// An exact value in canonical form, or a complex number.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Value {
    Exact(String),
    Numeric { re: f64, im: f64 },
}

impl Value {
    pub fn exact(v: &ExactScalar) -> Self {
        Value::Exact(v.to_string())
    }

    pub fn numeric(z: Complex64) -> CliResult<Self> {
        if !z.is_finite() {
            return Err(CliError::Degenerate(genstirling::Error::DegenerateParameters {
                factor: "table entry".into(),
                modulus: f64::INFINITY,
            }));
        }
        Ok(Value::Numeric { re: z.re, im: z.im })
    }

    /// The CSV form: the canonical string, or `re+im i` with 17 significant digits.
    pub fn flat(&self) -> String {
        match self {
            Value::Exact(s) => s.clone(),
            Value::Numeric { re, im } => {
                let sign = if im.is_sign_negative() { '-' } else { '+' };
                format!("{re:.16e}{sign}{:.16e}i", im.abs())
            }
        }
    }

    fn pretty(&self) -> String {
        match self {
            Value::Exact(s) => s.clone(),
            Value::Numeric { re, im } => {
                let sign = if im.is_sign_negative() { '-' } else { '+' };
                format!("{re:.10e}{sign}{:.10e}i", im.abs())
            }
        }
    }
}

impl TableDocument {
    pub fn new(family: impl Into<String>, params: BTreeMap<String, String>) -> Self {
        Self {
            schema_version: SCHEMA_VERSION,
            family: family.into(),
            params,
            rows: Vec::new(),
        }
    }

    pub fn from_exact(
        family: impl Into<String>,
        params: BTreeMap<String, String>,
        table: &TriangularTable<ExactScalar>,
    ) -> Self {
        let mut doc = Self::new(family, params);
        doc.rows = table
            .entries()
            .map(|(n, k, v)| Entry {
                n,
                k,
                value: Value::exact(v),
            })
            .collect();
        doc
    }

    pub fn from_numeric(
        family: impl Into<String>,
        params: BTreeMap<String, String>,
        table: &TriangularTable<Complex64>,
    ) -> CliResult<Self> {
        let mut doc = Self::new(family, params);
        doc.rows = table
            .entries()
            .map(|(n, k, v)| {
                Ok(Entry {
                    n,
                    k,
                    value: Value::numeric(*v)?,
                })
            })
            .collect::<CliResult<_>>()?;
        Ok(doc)
    }

    pub fn get(&self, n: usize, k: usize) -> Option<&Value> {
        self.rows.iter().find(|e| e.n == n && e.k == k).map(|e| &e.value)
    }

    pub fn render(&self, format: Format) -> String {
        match format {
            Format::Json => {
                let mut s = serde_json::to_string_pretty(self).expect("documents serialize");
                s.push('\n');
                s
            }
            Format::Csv => {
                let mut s = String::from("n,k,value\n");
                for e in &self.rows {
                    writeln!(s, "{},{},{}", e.n, e.k, csv_field(&e.value.flat())).expect("string write");
                }
                s
            }
            Format::Pretty => self.pretty(),
        }
    }

    fn pretty(&self) -> String {
        let mut s = format!("# {}", self.family);
        for (k, v) in &self.params {
            write!(s, "  {k}={v}").expect("string write");
        }
        s.push('\n');
        let mut rows: Vec<(usize, Vec<String>)> = Vec::new();
        for e in &self.rows {
            match rows.last_mut() {
                Some((n, values)) if *n == e.n => values.push(e.value.pretty()),
                _ => rows.push((e.n, vec![e.value.pretty()])),
            }
        }
        for (n, values) in rows {
            writeln!(s, "{n:>3} | {}", values.join(" | ")).expect("string write");
        }
        s
    }
}

fn csv_field(s: &str) -> String {
    if s.contains([',', '"', '\n']) {
        format!("\"{}\"", s.replace('"', "\"\""))
    } else {
        s.to_string()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn doc() -> TableDocument {
        let mut params = BTreeMap::new();
        params.insert("n".to_string(), "1".to_string());
        let mut d = TableDocument::new("demo", params);
        d.rows = vec![
            Entry {
                n: 0,
                k: 0,
                value: Value::Exact("1".into()),
            },
            Entry {
                n: 1,
                k: 0,
                value: Value::Numeric { re: 0.5, im: -0.25 },
            },
            Entry {
                n: 1,
                k: 1,
                value: Value::Exact("q + q^2".into()),
            },
        ];
        d
    }

    #[test]
    fn json_round_trip() {
        let d = doc();
        let back: TableDocument = serde_json::from_str(&d.render(Format::Json)).unwrap();
        assert_eq!(back, d);
    }

    #[test]
    fn csv_flattens_values() {
        let csv = doc().render(Format::Csv);
        let lines: Vec<&str> = csv.lines().collect();
        assert_eq!(lines[0], "n,k,value");
        assert_eq!(lines[1], "0,0,1");
        assert_eq!(lines[2], "1,0,5.0000000000000000e-1-2.5000000000000000e-1i");
        assert_eq!(lines[3], "1,1,q + q^2");
    }

    #[test]
    fn seventeen_significant_digits() {
        let v = Value::Numeric { re: 0.1 + 0.2, im: 0.0 };
        assert_eq!(v.flat(), "3.0000000000000004e-1+0.0000000000000000e0i");
        let re: f64 = v.flat().split('+').next().unwrap().parse().unwrap();
        assert_eq!(re, 0.1 + 0.2);
    }

    #[test]
    fn csv_quotes_commas() {
        assert_eq!(csv_field("a,b"), "\"a,b\"");
        assert_eq!(csv_field("plain"), "plain");
    }

    #[test]
    fn non_finite_values_are_rejected() {
        assert!(Value::numeric(Complex64::new(f64::NAN, 0.0)).is_err());
    }
}
