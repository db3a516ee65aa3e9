//! Flat record tables and their CSV / JSON renderings.
//!
//! Floats are written with 17 significant digits (`{:.16e}`), which is
//! enough to recover every `f64` bit for bit; zero is written as `0`. Since
//! rendering is a pure function of the cell values, parsing an emitted file
//! and rendering it again reproduces it byte for byte.

use serde_json::Value;
use std::fmt::Write;

#[derive(Debug, Clone, PartialEq)]
pub enum Cell {
    Float(f64),
    Int(i64),
    Text(String),
}

impl From<f64> for Cell {
    fn from(x: f64) -> Self {
        Cell::Float(x)
    }
}

impl From<usize> for Cell {
    fn from(x: usize) -> Self {
        Cell::Int(x as i64)
    }
}

impl From<&str> for Cell {
    fn from(s: &str) -> Self {
        Cell::Text(s.to_string())
    }
}

pub fn format_float(x: f64) -> String {
    if x == 0.0 {
        "0".to_string()
    } else {
        format!("{x:.16e}")
    }
}

impl Cell {
    fn render(&self) -> String {
        match self {
            Cell::Float(x) => format_float(*x),
            Cell::Int(i) => i.to_string(),
            Cell::Text(s) => s.clone(),
        }
    }

    /// Reads a bare token: integers, then floats, else text.
    fn parse(token: &str) -> Cell {
        if let Ok(i) = token.parse::<i64>() {
            Cell::Int(i)
        } else if let Ok(x) = token.parse::<f64>() {
            Cell::Float(x)
        } else {
            Cell::Text(token.to_string())
        }
    }

    pub fn as_f64(&self) -> Option<f64> {
        match self {
            Cell::Float(x) => Some(*x),
            Cell::Int(i) => Some(*i as f64),
            Cell::Text(_) => None,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Default)]
pub struct Table {
    pub columns: Vec<String>,
    pub rows: Vec<Vec<Cell>>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ParseError(pub String);

impl std::fmt::Display for ParseError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&self.0)
    }
}

impl std::error::Error for ParseError {}

impl Table {
    pub fn new(columns: &[&str]) -> Self {
        Table {
            columns: columns.iter().map(|c| c.to_string()).collect(),
            rows: Vec::new(),
        }
    }

    pub fn push(&mut self, row: Vec<Cell>) {
        assert_eq!(row.len(), self.columns.len(), "row width");
        self.rows.push(row);
    }

    pub fn column(&self, name: &str) -> Option<usize> {
        self.columns.iter().position(|c| c == name)
    }

    pub fn to_csv(&self) -> String {
        let mut w = csv::Writer::from_writer(Vec::new());
        w.write_record(&self.columns).expect("write to memory");
        for row in &self.rows {
            w.write_record(row.iter().map(Cell::render)).expect("write to memory");
        }
        String::from_utf8(w.into_inner().expect("flush to memory")).expect("utf-8 cells")
    }

    /// A JSON array of objects, one per row, keys in column order.
    pub fn to_json(&self) -> String {
        let mut out = String::from("[");
        for (i, row) in self.rows.iter().enumerate() {
            out.push_str(if i == 0 { "\n  {" } else { ",\n  {" });
            for (j, (name, cell)) in self.columns.iter().zip(row).enumerate() {
                if j > 0 {
                    out.push_str(", ");
                }
                let value = match cell {
                    Cell::Text(s) => Value::String(s.clone()).to_string(),
                    other => other.render(),
                };
                let _ = write!(out, "{}: {value}", Value::String(name.clone()));
            }
            out.push('}');
        }
        out.push_str(if self.rows.is_empty() { "]\n" } else { "\n]\n" });
        out
    }

    pub fn from_csv(text: &str) -> Result<Self, ParseError> {
        let mut r = csv::Reader::from_reader(text.as_bytes());
        let err = |e: csv::Error| ParseError(e.to_string());
        let columns = r.headers().map_err(err)?.iter().map(str::to_string).collect();
        let rows = r
            .records()
            .map(|rec| rec.map(|rec| rec.iter().map(Cell::parse).collect()).map_err(err))
            .collect::<Result<_, _>>()?;
        Ok(Table { columns, rows })
    }

    pub fn from_json(text: &str) -> Result<Self, ParseError> {
        let value: Value = serde_json::from_str(text).map_err(|e| ParseError(e.to_string()))?;
        let records = value
            .as_array()
            .ok_or_else(|| ParseError("expected a JSON array".into()))?;
        let mut table = Table::default();
        for (n, record) in records.iter().enumerate() {
            let object = record
                .as_object()
                .ok_or_else(|| ParseError(format!("record {n} is not an object")))?;
            let columns: Vec<String> = object.keys().cloned().collect();
            if n == 0 {
                table.columns = columns;
            } else if columns != table.columns {
                return Err(ParseError(format!("record {n} has different keys")));
            }
            let row = object
                .values()
                .map(|v| match v {
                    Value::String(s) => Ok(Cell::Text(s.clone())),
                    Value::Number(x) => Ok(Cell::parse(&x.to_string())),
                    other => Err(ParseError(format!("unsupported value {other}"))),
                })
                .collect::<Result<Vec<_>, _>>()?;
            table.rows.push(row);
        }
        Ok(table)
    }
}
