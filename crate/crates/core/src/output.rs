//! Tabular results as CSV or as a versioned JSON document.
//!
//! Floats use the shortest representation that round-trips to the same
//! double, so CSV and JSON carry identical values.

use std::io::{self, Write};

use serde_json::{Map, Number, Value};

pub const SCHEMA: &str = "coaxmode/1";

#[derive(Debug, Clone, PartialEq)]
pub enum Cell {
    Int(i64),
    UInt(u64),
    Float(f64),
    Text(String),
}

impl From<i64> for Cell {
    fn from(v: i64) -> Self {
        Cell::Int(v)
    }
}
impl From<u64> for Cell {
    fn from(v: u64) -> Self {
        Cell::UInt(v)
    }
}
impl From<u32> for Cell {
    fn from(v: u32) -> Self {
        Cell::UInt(v as u64)
    }
}
impl From<usize> for Cell {
    fn from(v: usize) -> Self {
        Cell::UInt(v as u64)
    }
}
impl From<f64> for Cell {
    fn from(v: f64) -> Self {
        Cell::Float(v)
    }
}
impl From<&str> for Cell {
    fn from(v: &str) -> Self {
        Cell::Text(v.to_string())
    }
}

/// Shortest round-trip decimal form; `NaN`, `inf`, `-inf` otherwise.
pub fn format_float(v: f64) -> String {
    if v.is_finite() {
        ryu::Buffer::new().format_finite(v).to_string()
    } else if v.is_nan() {
        "NaN".into()
    } else if v > 0.0 {
        "inf".into()
    } else {
        "-inf".into()
    }
}

impl Cell {
    fn csv(&self) -> String {
        match self {
            Cell::Int(v) => v.to_string(),
            Cell::UInt(v) => v.to_string(),
            Cell::Float(v) => format_float(*v),
            Cell::Text(s) => {
                if s.contains([',', '"', '\n', '\r']) {
                    format!("\"{}\"", s.replace('"', "\"\""))
                } else {
                    s.clone()
                }
            }
        }
    }

    fn json(&self) -> Value {
        match self {
            Cell::Int(v) => Value::from(*v),
            Cell::UInt(v) => Value::from(*v),
            // JSON has no NaN or infinity.
            Cell::Float(v) => Number::from_f64(*v).map_or(Value::Null, Value::Number),
            Cell::Text(s) => Value::String(s.clone()),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Default)]
pub struct Table {
    pub columns: Vec<String>,
    pub rows: Vec<Vec<Cell>>,
}

impl Table {
    pub fn new<S: Into<String>>(columns: impl IntoIterator<Item = S>) -> Self {
        Table {
            columns: columns.into_iter().map(Into::into).collect(),
            rows: Vec::new(),
        }
    }

    pub fn push(&mut self, row: Vec<Cell>) {
        assert_eq!(
            row.len(),
            self.columns.len(),
            "row width must match the header"
        );
        self.rows.push(row);
    }

    pub fn write_csv<W: Write>(&self, w: &mut W) -> io::Result<()> {
        writeln!(w, "{}", self.columns.join(","))?;
        for row in &self.rows {
            let line: Vec<String> = row.iter().map(Cell::csv).collect();
            writeln!(w, "{}", line.join(","))?;
        }
        Ok(())
    }

    pub fn to_json(&self, command: &str, params: Map<String, Value>) -> Value {
        let rows = self
            .rows
            .iter()
            .map(|row| {
                let obj: Map<String, Value> = self
                    .columns
                    .iter()
                    .zip(row)
                    .map(|(c, v)| (c.clone(), v.json()))
                    .collect();
                Value::Object(obj)
            })
            .collect();
        let mut doc = Map::new();
        doc.insert("schema".into(), SCHEMA.into());
        doc.insert("command".into(), command.into());
        doc.insert("params".into(), Value::Object(params));
        doc.insert("rows".into(), Value::Array(rows));
        Value::Object(doc)
    }

    pub fn write_json<W: Write>(
        &self,
        w: &mut W,
        command: &str,
        params: Map<String, Value>,
    ) -> io::Result<()> {
        serde_json::to_writer_pretty(&mut *w, &self.to_json(command, params))?;
        writeln!(w)
    }
}

/// JSON value for a float parameter, `null` when not finite.
pub fn json_float(v: f64) -> Value {
    Number::from_f64(v).map_or(Value::Null, Value::Number)
}
