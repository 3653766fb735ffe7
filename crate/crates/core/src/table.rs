//! Tabular results with deterministic CSV and JSON renderings.
//!
//! Reals are always written with 17 significant digits in exponent form, so
//! identical tables render to identical bytes.

use std::fmt::Write as _;

use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq)]
pub enum Value {
    Real(f64),
    Int(i64),
    Text(String),
}

impl Value {
    pub fn as_real(&self) -> Option<f64> {
        match *self {
            Value::Real(x) => Some(x),
            Value::Int(i) => Some(i as f64),
            Value::Text(_) => None,
        }
    }

    /// Plain-text rendering used by both writers.
    pub fn render(&self) -> String {
        match self {
            Value::Real(x) => format_real(*x),
            Value::Int(i) => i.to_string(),
            Value::Text(s) => s.clone(),
        }
    }

    fn render_json(&self) -> String {
        match self {
            Value::Real(x) if x.is_finite() => format_real(*x),
            Value::Int(i) => i.to_string(),
            other => serde_json::to_string(&other.render()).expect("string serializes"),
        }
    }
}

impl From<f64> for Value {
    fn from(x: f64) -> Self {
        Value::Real(x)
    }
}

impl From<i64> for Value {
    fn from(i: i64) -> Self {
        Value::Int(i)
    }
}

impl From<usize> for Value {
    fn from(i: usize) -> Self {
        Value::Int(i as i64)
    }
}

impl From<&str> for Value {
    fn from(s: &str) -> Self {
        Value::Text(s.to_string())
    }
}

impl From<String> for Value {
    fn from(s: String) -> Self {
        Value::Text(s)
    }
}

impl From<bool> for Value {
    fn from(b: bool) -> Self {
        Value::Text(if b { "true" } else { "false" }.to_string())
    }
}

/// 17 significant digits, exponent form.
pub fn format_real(x: f64) -> String {
    if x.is_nan() {
        "NaN".to_string()
    } else if x.is_infinite() {
        if x > 0.0 { "inf" } else { "-inf" }.to_string()
    } else {
        format!("{x:.16e}")
    }
}

/// Named columns, homogeneous rows and an ordered metadata block.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct ResultTable {
    columns: Vec<String>,
    rows: Vec<Vec<Value>>,
    meta: Vec<(String, Value)>,
}

impl ResultTable {
    pub fn new<S: Into<String>>(columns: impl IntoIterator<Item = S>) -> Self {
        Self {
            columns: columns.into_iter().map(Into::into).collect(),
            rows: Vec::new(),
            meta: Vec::new(),
        }
    }

    pub fn columns(&self) -> &[String] {
        &self.columns
    }

    pub fn rows(&self) -> &[Vec<Value>] {
        &self.rows
    }

    pub fn meta(&self) -> &[(String, Value)] {
        &self.meta
    }

    pub fn len(&self) -> usize {
        self.rows.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rows.is_empty()
    }

    pub fn push_row(&mut self, row: Vec<Value>) -> Result<()> {
        if row.len() != self.columns.len() {
            return Err(Error::DimensionMismatch {
                expected: self.columns.len(),
                found: row.len(),
            });
        }
        self.rows.push(row);
        Ok(())
    }

    /// Sets a metadata entry, replacing an existing key in place.
    pub fn set_meta(&mut self, key: impl Into<String>, value: impl Into<Value>) {
        let key = key.into();
        let value = value.into();
        match self.meta.iter_mut().find(|(k, _)| *k == key) {
            Some(slot) => slot.1 = value,
            None => self.meta.push((key, value)),
        }
    }

    pub fn meta_value(&self, key: &str) -> Option<&Value> {
        self.meta.iter().find(|(k, _)| k == key).map(|(_, v)| v)
    }

    pub fn column_index(&self, name: &str) -> Option<usize> {
        self.columns.iter().position(|c| c == name)
    }

    /// All values of a numeric column.
    pub fn column(&self, name: &str) -> Option<Vec<f64>> {
        let i = self.column_index(name)?;
        self.rows.iter().map(|r| r[i].as_real()).collect()
    }

    /// CSV with `# key=value` metadata lines, a header row and one line per
    /// row, RFC-4180 quoting.
    pub fn to_csv(&self) -> Result<String> {
        let mut out = String::new();
        for (k, v) in &self.meta {
            let _ = writeln!(out, "# {}={}", k, v.render().replace('\n', " "));
        }
        let mut w = csv::WriterBuilder::new()
            .terminator(csv::Terminator::Any(b'\n'))
            .from_writer(Vec::new());
        let ser = |e: csv::Error| Error::Serialization(e.to_string());
        w.write_record(&self.columns).map_err(ser)?;
        for row in &self.rows {
            w.write_record(row.iter().map(Value::render)).map_err(ser)?;
        }
        let bytes = w
            .into_inner()
            .map_err(|e| Error::Serialization(e.to_string()))?;
        out.push_str(&String::from_utf8(bytes).map_err(|e| Error::Serialization(e.to_string()))?);
        Ok(out)
    }

    /// `{"meta": {...}, "rows": [{column: value, ...}, ...]}` with keys in
    /// insertion order.
    pub fn to_json(&self) -> String {
        let key = |s: &str| serde_json::to_string(s).expect("string serializes");
        let mut out = String::from("{\n  \"meta\": {");
        for (i, (k, v)) in self.meta.iter().enumerate() {
            let sep = if i == 0 { "" } else { "," };
            let _ = write!(out, "{sep}\n    {}: {}", key(k), v.render_json());
        }
        out.push_str(if self.meta.is_empty() {
            "},\n"
        } else {
            "\n  },\n"
        });
        out.push_str("  \"rows\": [");
        for (i, row) in self.rows.iter().enumerate() {
            out.push_str(if i == 0 { "\n    {" } else { ",\n    {" });
            for (j, (c, v)) in self.columns.iter().zip(row).enumerate() {
                let sep = if j == 0 { "" } else { ", " };
                let _ = write!(out, "{sep}{}: {}", key(c), v.render_json());
            }
            out.push('}');
        }
        out.push_str(if self.rows.is_empty() {
            "]\n}\n"
        } else {
            "\n  ]\n}\n"
        });
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sample() -> ResultTable {
        let mut t = ResultTable::new(["n", "W", "note"]);
        t.set_meta("theta", 0.5);
        t.push_row(vec![0usize.into(), 0.25.into(), "a,b".into()])
            .unwrap();
        t.push_row(vec![1usize.into(), f64::NAN.into(), "x".into()])
            .unwrap();
        t
    }

    #[test]
    fn real_formatting() {
        assert_eq!(format_real(0.5), "5.0000000000000000e-1");
        assert_eq!(format_real(-3.0), "-3.0000000000000000e0");
        assert_eq!(format_real(0.1).parse::<f64>().unwrap(), 0.1);
    }

    #[test]
    fn csv_layout() {
        let csv = sample().to_csv().unwrap();
        assert_eq!(
            csv,
            "# theta=5.0000000000000000e-1\nn,W,note\n0,2.5000000000000000e-1,\"a,b\"\n1,NaN,x\n"
        );
    }

    #[test]
    fn json_layout_parses() {
        let js = sample().to_json();
        let v: serde_json::Value = serde_json::from_str(&js).unwrap();
        assert_eq!(v["meta"]["theta"], 0.5);
        assert_eq!(v["rows"][0]["note"], "a,b");
        assert_eq!(v["rows"][1]["W"], "NaN");
        let empty = ResultTable::new(["x"]).to_json();
        serde_json::from_str::<serde_json::Value>(&empty).unwrap();
    }

    #[test]
    fn row_width_enforced() {
        let mut t = ResultTable::new(["a"]);
        assert!(t.push_row(vec![]).is_err());
    }

    #[test]
    fn meta_replaced_in_place() {
        let mut t = sample();
        t.set_meta("tail", 1e-12);
        t.set_meta("theta", 0.7);
        assert_eq!(t.meta()[0], ("theta".to_string(), Value::Real(0.7)));
        assert_eq!(t.meta().len(), 2);
    }
}
