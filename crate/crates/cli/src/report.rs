//! Tabular reports rendered as CSV or JSON.
//!
//! Reals are printed with 17 significant digits in scientific notation, which
//! round-trips every `f64` and does not depend on the locale. CSV metadata
//! goes in leading `# key: value` comment lines; JSON mirrors the same
//! content as `{"meta": {...}, "header": [...], "rows": [[...], ...]}`.

use std::collections::BTreeMap;
use std::fmt;

use serde::ser::{Serialize, SerializeMap, Serializer};
use serde_json::value::RawValue;

#[derive(Debug, Clone, PartialEq)]
pub enum Cell {
    Int(u64),
    Real(f64),
    Bool(bool),
    Text(String),
}

/// Formats a real with 17 significant digits.
pub fn format_real(x: f64) -> String {
    if x.is_finite() {
        format!("{x:.16e}")
    } else if x.is_nan() {
        "NaN".into()
    } else if x > 0.0 {
        "inf".into()
    } else {
        "-inf".into()
    }
}

impl fmt::Display for Cell {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Cell::Int(i) => write!(f, "{i}"),
            Cell::Real(x) => f.write_str(&format_real(*x)),
            Cell::Bool(b) => write!(f, "{b}"),
            Cell::Text(s) => f.write_str(s),
        }
    }
}

impl Serialize for Cell {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        match self {
            Cell::Int(i) => s.serialize_u64(*i),
            Cell::Bool(b) => s.serialize_bool(*b),
            Cell::Text(t) => s.serialize_str(t),
            Cell::Real(x) if x.is_finite() => RawValue::from_string(format_real(*x))
                .map_err(serde::ser::Error::custom)?
                .serialize(s),
            Cell::Real(_) => s.serialize_none(),
        }
    }
}

impl From<f64> for Cell {
    fn from(x: f64) -> Self {
        Cell::Real(x)
    }
}

impl From<u64> for Cell {
    fn from(i: u64) -> Self {
        Cell::Int(i)
    }
}

impl From<bool> for Cell {
    fn from(b: bool) -> Self {
        Cell::Bool(b)
    }
}

impl From<&str> for Cell {
    fn from(s: &str) -> Self {
        Cell::Text(s.into())
    }
}

impl From<String> for Cell {
    fn from(s: String) -> Self {
        Cell::Text(s)
    }
}

#[derive(Debug, Clone, Default, PartialEq)]
pub struct ReportTable {
    header: Vec<String>,
    rows: Vec<Vec<Cell>>,
    meta: BTreeMap<String, Cell>,
}

impl ReportTable {
    pub fn new<S: Into<String>>(header: impl IntoIterator<Item = S>) -> Self {
        Self {
            header: header.into_iter().map(Into::into).collect(),
            ..Self::default()
        }
    }

    /// Appends a row. Panics if its arity differs from the header's.
    pub fn push_row(&mut self, row: Vec<Cell>) {
        assert_eq!(row.len(), self.header.len(), "row arity must match header");
        self.rows.push(row);
    }

    pub fn set_meta(&mut self, key: &str, value: impl Into<Cell>) {
        self.meta.insert(key.into(), value.into());
    }

    pub fn header(&self) -> &[String] {
        &self.header
    }

    pub fn rows(&self) -> &[Vec<Cell>] {
        &self.rows
    }

    pub fn meta(&self) -> &BTreeMap<String, Cell> {
        &self.meta
    }

    /// Index of a named column.
    pub fn column(&self, name: &str) -> Option<usize> {
        self.header.iter().position(|h| h == name)
    }

    pub fn to_csv(&self) -> String {
        let mut out = String::new();
        for (k, v) in &self.meta {
            out.push_str(&format!("# {k}: {v}\n"));
        }
        let header: Vec<String> = self.header.iter().map(|h| csv_field(h)).collect();
        out.push_str(&header.join(","));
        out.push('\n');
        for row in &self.rows {
            let fields: Vec<String> = row.iter().map(|c| csv_field(&c.to_string())).collect();
            out.push_str(&fields.join(","));
            out.push('\n');
        }
        out
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("report serializes");
        s.push('\n');
        s
    }
}

impl Serialize for ReportTable {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let mut map = s.serialize_map(Some(3))?;
        map.serialize_entry("meta", &self.meta)?;
        map.serialize_entry("header", &self.header)?;
        map.serialize_entry("rows", &self.rows)?;
        map.end()
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

    fn sample() -> ReportTable {
        let mut t = ReportTable::new(["x", "flag", "note"]);
        t.push_row(vec![Cell::Real(0.1), Cell::Bool(true), "a,b".into()]);
        t.push_row(vec![Cell::Real(-7.25e-300), Cell::Bool(false), "plain".into()]);
        t.set_meta("version", "1");
        t
    }

    #[test]
    fn reals_round_trip_at_17_digits() {
        for x in [0.1, 1.0 / 3.0, 7.168_900_064_185_502, -1e-300, 6.02e23, f64::MIN_POSITIVE] {
            let s = format_real(x);
            assert_eq!(s.parse::<f64>().unwrap(), x);
            let mantissa = s.split('e').next().unwrap();
            assert_eq!(mantissa.chars().filter(|c| c.is_ascii_digit()).count(), 17);
        }
    }

    #[test]
    fn csv_layout() {
        let csv = sample().to_csv();
        let lines: Vec<&str> = csv.lines().collect();
        assert_eq!(lines[0], "# version: 1");
        assert_eq!(lines[1], "x,flag,note");
        assert_eq!(lines[2], "1.0000000000000001e-1,true,\"a,b\"");
    }

    #[test]
    fn json_mirrors_csv() {
        let t = sample();
        let v: serde_json::Value = serde_json::from_str(&t.to_json()).unwrap();
        assert_eq!(v["header"][2], "note");
        assert_eq!(v["rows"][0][0].as_f64(), Some(0.1));
        assert_eq!(v["rows"][1][0].as_f64(), Some(-7.25e-300));
        assert_eq!(v["rows"][1][1], false);
        assert_eq!(v["meta"]["version"], "1");
    }

    #[test]
    #[should_panic(expected = "arity")]
    fn arity_is_enforced() {
        let mut t = ReportTable::new(["a", "b"]);
        t.push_row(vec![Cell::Int(1)]);
    }
}
