//! Output plumbing: CSV/JSON selection, float formatting, and the version
//! header that prefixes every CSV stream.
//!
//! CSV uses '.' decimals, ',' separators, and 17 significant digits so the
//! values round-trip through f64 exactly. Empty cells mark rows where a
//! quantity does not exist (e.g. no boundary root).

use std::fs;
use std::io::{self, Write};
use std::path::Path;

pub const VERSION_HEADER: &str = concat!("# qsteer ", env!("CARGO_PKG_VERSION"));

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Format {
    Json,
    Csv,
}

/// 17 significant digits; round-trip safe for double precision.
pub fn fmt_f64(x: f64) -> String {
    format!("{x:.16e}")
}

/// One CSV cell: a value or empty.
pub fn fmt_cell(x: Option<f64>) -> String {
    x.map(fmt_f64).unwrap_or_default()
}

/// Assembles a CSV document: version header, column header, rows.
pub fn csv_document(columns: &[&str], rows: &[Vec<Option<f64>>]) -> String {
    let mut out = String::new();
    out.push_str(VERSION_HEADER);
    out.push('\n');
    out.push_str(&columns.join(","));
    out.push('\n');
    for row in rows {
        let cells: Vec<String> = row.iter().map(|c| fmt_cell(*c)).collect();
        out.push_str(&cells.join(","));
        out.push('\n');
    }
    out
}

/// Wraps rows as an array of JSON records keyed by column name, with the
/// version alongside.
pub fn json_rows(columns: &[&str], rows: &[Vec<Option<f64>>]) -> serde_json::Value {
    let records: Vec<serde_json::Value> = rows
        .iter()
        .map(|row| {
            let mut obj = serde_json::Map::new();
            for (name, cell) in columns.iter().zip(row.iter()) {
                let v = match cell {
                    Some(x) => serde_json::json!(x),
                    None => serde_json::Value::Null,
                };
                obj.insert((*name).to_string(), v);
            }
            serde_json::Value::Object(obj)
        })
        .collect();
    serde_json::json!({
        "version": env!("CARGO_PKG_VERSION"),
        "rows": records,
    })
}

/// Renders a row table in the requested format.
pub fn render_rows(columns: &[&str], rows: &[Vec<Option<f64>>], format: Format) -> String {
    match format {
        Format::Csv => csv_document(columns, rows),
        Format::Json => {
            let mut s = serde_json::to_string_pretty(&json_rows(columns, rows)).unwrap();
            s.push('\n');
            s
        }
    }
}

/// Serializes a record with the version field injected at the top level.
pub fn render_record<T: serde::Serialize>(record: &T) -> String {
    let mut value = serde_json::to_value(record).unwrap();
    if let serde_json::Value::Object(map) = &mut value {
        map.insert(
            "version".to_string(),
            serde_json::json!(env!("CARGO_PKG_VERSION")),
        );
    }
    let mut s = serde_json::to_string_pretty(&value).unwrap();
    s.push('\n');
    s
}

/// Writes to the given path, or stdout when no path is set.
pub fn emit(out: Option<&Path>, payload: &str) -> io::Result<()> {
    match out {
        Some(path) => fs::write(path, payload),
        None => io::stdout().write_all(payload.as_bytes()),
    }
}
