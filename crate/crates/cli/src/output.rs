//! CSV and JSON encoders for scalar tables and surfaces.
//!
//! CSV: `name,value,unit` for tables, `axis1,axis2,value` for surfaces, one header row.
//! JSON: a single object `{"meta": {...}, "data": [...]}`.

use std::fs::File;
use std::io::{self, Write};
use std::path::Path;

use clap::ValueEnum;
use ifm_core::SurfaceGrid;
use serde_json::{json, Map, Value};

use crate::error::CliResult;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Csv,
    Json,
}

/// Shortest decimal that parses back to the same `f64`; exponent form outside `[1e-4, 1e16)`.
pub fn format_number(v: f64) -> String {
    let mag = v.abs();
    if v == 0.0 || (1e-4..1e16).contains(&mag) || !v.is_finite() {
        format!("{v}")
    } else {
        format!("{v:e}")
    }
}

pub struct Row {
    pub name: &'static str,
    pub value: f64,
    pub unit: &'static str,
}

pub fn row(name: &'static str, value: f64, unit: &'static str) -> Row {
    Row { name, value, unit }
}

/// Named scalar results plus the parameters that produced them.
pub struct Table {
    pub meta: Map<String, Value>,
    pub rows: Vec<Row>,
}

impl Table {
    pub fn new(command: &str) -> Self {
        Self { meta: base_meta(command), rows: Vec::new() }
    }

    pub fn meta(mut self, key: &str, value: impl Into<Value>) -> Self {
        self.meta.insert(key.to_owned(), value.into());
        self
    }

    pub fn push(&mut self, name: &'static str, value: f64, unit: &'static str) {
        self.rows.push(row(name, value, unit));
    }
}

pub fn base_meta(command: &str) -> Map<String, Value> {
    let mut meta = Map::new();
    meta.insert("command".into(), command.into());
    meta.insert("version".into(), env!("CARGO_PKG_VERSION").into());
    meta
}

pub fn encode_table(table: &Table, format: Format) -> CliResult<Vec<u8>> {
    match format {
        Format::Csv => {
            let mut w = csv::Writer::from_writer(Vec::new());
            w.write_record(["name", "value", "unit"])?;
            for r in &table.rows {
                w.write_record([r.name, &format_number(r.value), r.unit])?;
            }
            Ok(w.into_inner().map_err(|e| crate::error::CliError::Encode(e.to_string()))?)
        }
        Format::Json => {
            let data: Vec<Value> =
                table.rows.iter().map(|r| json!({"name": r.name, "value": r.value, "unit": r.unit})).collect();
            encode_json(&table.meta, data)
        }
    }
}

pub fn encode_surface(grid: &SurfaceGrid, mut meta: Map<String, Value>, format: Format) -> CliResult<Vec<u8>> {
    match format {
        Format::Csv => {
            let mut w = csv::Writer::from_writer(Vec::new());
            w.write_record(["axis1", "axis2", "value"])?;
            for (a, b, v) in grid.triples() {
                w.write_record([format_number(a), format_number(b), format_number(v)])?;
            }
            Ok(w.into_inner().map_err(|e| crate::error::CliError::Encode(e.to_string()))?)
        }
        Format::Json => {
            let (rows, cols) = grid.shape();
            meta.insert("axis1_name".into(), grid.axis1_name.clone().into());
            meta.insert("axis2_name".into(), grid.axis2_name.clone().into());
            meta.insert("shape".into(), json!([rows, cols]));
            meta.insert("generation".into(), serde_json::to_value(&grid.metadata)?);
            let data: Vec<Value> = grid.triples().map(|(a, b, v)| json!({"axis1": a, "axis2": b, "value": v})).collect();
            encode_json(&meta, data)
        }
    }
}

fn encode_json(meta: &Map<String, Value>, data: Vec<Value>) -> CliResult<Vec<u8>> {
    let mut bytes = serde_json::to_vec_pretty(&json!({"meta": meta, "data": data}))?;
    bytes.push(b'\n');
    Ok(bytes)
}

/// Writes to `path`, or stdout when absent.
pub fn emit(bytes: &[u8], path: Option<&Path>) -> CliResult<()> {
    match path {
        Some(p) => File::create(p)?.write_all(bytes)?,
        None => {
            let mut out = io::stdout().lock();
            out.write_all(bytes)?;
            out.flush()?;
        }
    }
    Ok(())
}
