//! Result tables and their CSV / JSON encodings.

use std::io::Write;
use std::path::Path;

use serde::Serialize;
use serde_json::{json, Value};

use crate::config::RunConfig;
use crate::spec::OutputFormat;
use crate::{CliError, CliResult};

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Column {
    pub name: String,
    pub unit: String,
}

impl Column {
    pub fn new(name: &str, unit: &str) -> Self {
        Self {
            name: name.to_string(),
            unit: unit.to_string(),
        }
    }

    pub fn header(&self) -> String {
        format!("{}[{}]", self.name, self.unit)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum Cell {
    Num(f64),
    Text(String),
    Empty,
}

impl Cell {
    /// CSV field. Floats keep 17 significant digits so they parse back exactly.
    pub fn to_field(&self) -> String {
        match self {
            Cell::Num(x) => format_float(*x),
            Cell::Text(s) => s.clone(),
            Cell::Empty => String::new(),
        }
    }

    /// Numbers where possible, otherwise text; empty fields stay empty.
    pub fn from_field(field: &str) -> Self {
        if field.is_empty() {
            Cell::Empty
        } else if let Ok(x) = field.parse::<f64>() {
            Cell::Num(x)
        } else {
            Cell::Text(field.to_string())
        }
    }

    fn to_json(&self) -> Value {
        match self {
            Cell::Num(x) if x.is_finite() => json!(x),
            Cell::Num(x) => json!(format_float(*x)),
            Cell::Text(s) => json!(s),
            Cell::Empty => Value::Null,
        }
    }
}

pub fn format_float(x: f64) -> String {
    if x.is_nan() {
        "NaN".into()
    } else if x.is_infinite() {
        if x > 0.0 { "inf" } else { "-inf" }.into()
    } else {
        format!("{x:.16e}")
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct ResultTable {
    pub columns: Vec<Column>,
    pub rows: Vec<Vec<Cell>>,
    pub metadata: Value,
}

pub const STATUS_OK: &str = "ok";

impl ResultTable {
    pub fn new(columns: Vec<Column>, metadata: Value) -> Self {
        Self {
            columns,
            rows: vec![],
            metadata,
        }
    }

    pub fn push(&mut self, row: Vec<Cell>) {
        assert_eq!(
            row.len(),
            self.columns.len(),
            "row arity must match the columns"
        );
        self.rows.push(row);
    }

    fn status_index(&self) -> Option<usize> {
        self.columns.iter().position(|c| c.name == "status")
    }

    /// Rows whose status flag is anything but `ok`.
    pub fn failures(&self) -> usize {
        match self.status_index() {
            Some(i) => self
                .rows
                .iter()
                .filter(|r| r[i] != Cell::Text(STATUS_OK.into()))
                .count(),
            None => 0,
        }
    }

    pub fn to_csv(&self) -> CliResult<Vec<u8>> {
        let mut w = csv::WriterBuilder::new()
            .terminator(csv::Terminator::Any(b'\n'))
            .quote_style(csv::QuoteStyle::Necessary)
            .from_writer(vec![]);
        let csv_err = |e: csv::Error| CliError::io("csv buffer", std::io::Error::other(e));
        w.write_record(self.columns.iter().map(Column::header))
            .map_err(csv_err)?;
        for row in &self.rows {
            w.write_record(row.iter().map(Cell::to_field))
                .map_err(csv_err)?;
        }
        w.into_inner()
            .map_err(|e| CliError::io("csv buffer", std::io::Error::other(e.to_string())))
    }

    pub fn to_json(&self) -> Vec<u8> {
        let rows: Vec<Value> = self
            .rows
            .iter()
            .map(|r| Value::Array(r.iter().map(Cell::to_json).collect()))
            .collect();
        let doc = json!({
            "metadata": self.metadata,
            "columns": self.columns,
            "rows": rows,
        });
        let mut out = serde_json::to_vec_pretty(&doc).expect("json values always serialize");
        out.push(b'\n');
        out
    }

    pub fn encode(&self, format: OutputFormat) -> CliResult<Vec<u8>> {
        match format {
            OutputFormat::Csv => self.to_csv(),
            OutputFormat::Json => Ok(self.to_json()),
        }
    }

    /// Write to `path`, or stdout when `None`. CSV written to a file gets a
    /// `<path>.meta.json` sidecar carrying the metadata.
    pub fn emit(&self, path: Option<&Path>, format: OutputFormat) -> CliResult<()> {
        let bytes = self.encode(format)?;
        match path {
            Some(p) => {
                write_file(p, &bytes)?;
                if format == OutputFormat::Csv {
                    let mut meta = serde_json::to_vec_pretty(&self.metadata)
                        .expect("json values always serialize");
                    meta.push(b'\n');
                    write_file(&sidecar_path(p), &meta)?;
                }
                Ok(())
            }
            None => std::io::stdout()
                .lock()
                .write_all(&bytes)
                .map_err(|e| CliError::io("stdout", e)),
        }
    }

    /// Parse CSV produced by [`ResultTable::to_csv`]; metadata is not stored in CSV.
    pub fn from_csv(bytes: &[u8]) -> CliResult<Self> {
        let bad = |m: String| CliError::spec(format!("csv: {m}"));
        let mut r = csv::ReaderBuilder::new()
            .has_headers(true)
            .from_reader(bytes);
        let columns = r
            .headers()
            .map_err(|e| bad(e.to_string()))?
            .iter()
            .map(|h| {
                let (name, unit) = h
                    .strip_suffix(']')
                    .and_then(|h| h.split_once('['))
                    .ok_or_else(|| bad(format!("header `{h}`")))?;
                Ok(Column::new(name, unit))
            })
            .collect::<CliResult<Vec<_>>>()?;
        let mut table = Self::new(columns, Value::Null);
        for record in r.records() {
            let record = record.map_err(|e| bad(e.to_string()))?;
            table
                .rows
                .push(record.iter().map(Cell::from_field).collect());
        }
        Ok(table)
    }
}

pub fn sidecar_path(path: &Path) -> std::path::PathBuf {
    let mut name = path.as_os_str().to_owned();
    name.push(".meta.json");
    name.into()
}

pub(crate) fn write_file(path: &Path, bytes: &[u8]) -> CliResult<()> {
    std::fs::write(path, bytes).map_err(|e| CliError::io(path.display().to_string(), e))
}

pub fn write_text(path: &Path, text: &str) -> CliResult<()> {
    write_file(path, text.as_bytes())
}

/// Common metadata block. No timestamp, so identical runs give identical bytes.
pub fn metadata(kind: &str, cfg: &RunConfig, input: Value) -> Value {
    json!({
        "tool": "gasshift",
        "version": env!("CARGO_PKG_VERSION"),
        "kind": kind,
        "config": cfg,
        "solver": { "tba": cfg.tba() },
        "input": input,
    })
}
