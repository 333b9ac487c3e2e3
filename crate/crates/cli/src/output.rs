//! CSV tables headed by a one-line JSON manifest.
//!
//! Numbers are written with 17 significant digits in scientific notation so
//! identical runs produce identical bytes.

use std::collections::BTreeMap;
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use serde::Serialize;
use serde_json::Value;

use crate::error::CliResult;

#[derive(Debug, Clone, PartialEq)]
pub enum Cell {
    Num(f64),
    Int(i64),
    Text(String),
}

impl Cell {
    fn render(&self) -> String {
        match self {
            Cell::Num(x) => format_number(*x),
            Cell::Int(n) => n.to_string(),
            Cell::Text(s) => s.clone(),
        }
    }
}

impl From<f64> for Cell {
    fn from(x: f64) -> Self {
        Cell::Num(x)
    }
}

impl From<usize> for Cell {
    fn from(n: usize) -> Self {
        Cell::Int(n as i64)
    }
}

impl From<u64> for Cell {
    fn from(n: u64) -> Self {
        Cell::Int(n as i64)
    }
}

impl From<&str> for Cell {
    fn from(s: &str) -> Self {
        Cell::Text(s.to_owned())
    }
}

impl From<String> for Cell {
    fn from(s: String) -> Self {
        Cell::Text(s)
    }
}

impl From<bool> for Cell {
    fn from(b: bool) -> Self {
        Cell::Text(b.to_string())
    }
}

pub fn format_number(x: f64) -> String {
    if x.is_finite() {
        format!("{x:.16e}")
    } else {
        "nan".to_owned()
    }
}

/// Header describing how a table was produced.
#[derive(Debug, Clone, Serialize, PartialEq)]
pub struct Manifest {
    pub command: Vec<String>,
    pub parameters: BTreeMap<String, Value>,
    pub columns: Vec<String>,
    pub rows: usize,
    pub version: String,
    pub controls: BTreeMap<String, Value>,
    /// Derived figures such as a field minimum.
    #[serde(skip_serializing_if = "BTreeMap::is_empty")]
    pub summary: BTreeMap<String, Value>,
}

/// Builder for the parameter and control maps of a [`Manifest`].
#[derive(Debug, Clone, Default)]
pub struct Params(BTreeMap<String, Value>);

impl Params {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn with(mut self, key: &str, value: impl Into<Value>) -> Self {
        self.0.insert(key.to_owned(), value.into());
        self
    }

    pub fn into_map(self) -> BTreeMap<String, Value> {
        self.0
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Table {
    pub columns: Vec<String>,
    pub rows: Vec<Vec<Cell>>,
}

impl Table {
    pub fn new(columns: &[&str]) -> Self {
        Self {
            columns: columns.iter().map(|c| (*c).to_owned()).collect(),
            rows: Vec::new(),
        }
    }

    pub fn push(&mut self, row: Vec<Cell>) {
        debug_assert_eq!(row.len(), self.columns.len());
        self.rows.push(row);
    }

    /// Values of a numeric column.
    pub fn column(&self, name: &str) -> Option<Vec<f64>> {
        let k = self.columns.iter().position(|c| c == name)?;
        self.rows
            .iter()
            .map(|row| match row[k] {
                Cell::Num(x) => Some(x),
                Cell::Int(n) => Some(n as f64),
                Cell::Text(_) => None,
            })
            .collect()
    }
}

/// A table with its manifest.
#[derive(Debug, Clone, PartialEq)]
pub struct Document {
    pub manifest: Manifest,
    pub table: Table,
}

impl Document {
    pub fn new(command: &[String], parameters: Params, controls: Params, table: Table) -> Self {
        Self {
            manifest: Manifest {
                command: command.to_vec(),
                parameters: parameters.into_map(),
                columns: table.columns.clone(),
                rows: table.rows.len(),
                version: env!("CARGO_PKG_VERSION").to_owned(),
                controls: controls.into_map(),
                summary: BTreeMap::new(),
            },
            table,
        }
    }

    pub fn with_summary(mut self, summary: Params) -> Self {
        self.manifest.summary = summary.into_map();
        self
    }

    pub fn write_csv(&self, out: &mut dyn Write) -> CliResult<()> {
        writeln!(out, "# {}", serde_json::to_string(&self.manifest)?)?;
        writeln!(out, "{}", self.table.columns.join(","))?;
        for row in &self.table.rows {
            let line: Vec<String> = row.iter().map(Cell::render).collect();
            writeln!(out, "{}", line.join(","))?;
        }
        Ok(())
    }

    pub fn save(&self, path: &Path) -> CliResult<()> {
        let mut buffer = Vec::new();
        self.write_csv(&mut buffer)?;
        fs::write(path, buffer)?;
        Ok(())
    }
}

/// Where single-table commands write.
#[derive(Debug, Clone, PartialEq)]
pub enum Sink {
    Stdout,
    File(PathBuf),
}

impl Sink {
    pub fn emit(&self, doc: &Document, stdout: &mut dyn Write) -> CliResult<()> {
        match self {
            Sink::Stdout => doc.write_csv(stdout),
            Sink::File(path) => doc.save(path),
        }
    }
}
