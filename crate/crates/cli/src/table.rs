//! CSV and JSON output with full-precision numbers.

use std::fmt::Write as _;
use std::path::{Path, PathBuf};
use std::time::{SystemTime, UNIX_EPOCH};

use gamov::{Mat, Vector, C64};

use crate::failure::Failure;

/// Seventeen significant digits.
pub fn num(x: f64) -> String {
    format!("{x:.16e}")
}

pub fn complex_cells(z: C64) -> [String; 2] {
    [num(z.re), num(z.im)]
}

/// Real and imaginary parts of every entry, row by row.
pub fn matrix_cells(m: &Mat) -> Vec<String> {
    let mut out = Vec::with_capacity(2 * m.len());
    for i in 0..m.nrows() {
        for j in 0..m.ncols() {
            out.extend(complex_cells(m[(i, j)]));
        }
    }
    out
}

pub fn vector_cells(v: &Vector) -> Vec<String> {
    v.iter().flat_map(|z| complex_cells(*z)).collect()
}

pub fn matrix_headers(prefix: &str, rows: usize, cols: usize) -> Vec<String> {
    let mut out = Vec::new();
    for i in 0..rows {
        for j in 0..cols {
            out.push(format!("{prefix}_re_{i}_{j}"));
            out.push(format!("{prefix}_im_{i}_{j}"));
        }
    }
    out
}

pub fn vector_headers(prefix: &str, len: usize) -> Vec<String> {
    (0..len).flat_map(|i| [format!("{prefix}_re_{i}"), format!("{prefix}_im_{i}")]).collect()
}

#[derive(Debug, Default)]
pub struct Table {
    pub header: Vec<String>,
    pub rows: Vec<Vec<String>>,
}

impl Table {
    pub fn new(header: Vec<String>) -> Self {
        Table { header, rows: Vec::new() }
    }

    pub fn push(&mut self, row: Vec<String>) {
        debug_assert_eq!(row.len(), self.header.len());
        self.rows.push(row);
    }

    /// The CSV body, without the timestamp line.
    pub fn body(&self) -> String {
        let mut s = self.header.join(",");
        s.push('\n');
        for r in &self.rows {
            s.push_str(&r.join(","));
            s.push('\n');
        }
        s
    }

    /// Rows as JSON objects keyed by column name; numeric cells become numbers.
    pub fn to_json(&self) -> serde_json::Value {
        let rows = self
            .rows
            .iter()
            .map(|r| {
                let obj = self
                    .header
                    .iter()
                    .zip(r)
                    .map(|(k, v)| {
                        let value = v.parse::<f64>().map(serde_json::Value::from).unwrap_or_else(|_| serde_json::Value::from(v.clone()));
                        (k.clone(), value)
                    })
                    .collect::<serde_json::Map<_, _>>();
                serde_json::Value::Object(obj)
            })
            .collect();
        serde_json::Value::Array(rows)
    }
}

pub fn timestamp_line(command: &str) -> String {
    let secs = SystemTime::now().duration_since(UNIX_EPOCH).map(|d| d.as_secs()).unwrap_or(0);
    format!("# gamov-kit {command} generated_unix={secs}\n")
}

pub fn write_csv(dir: &Path, name: &str, command: &str, table: &Table) -> Result<PathBuf, Failure> {
    let path = dir.join(format!("{name}.csv"));
    let mut s = timestamp_line(command);
    write!(s, "{}", table.body()).expect("writing to a string");
    std::fs::write(&path, s)?;
    Ok(path)
}

pub fn write_json(dir: &Path, name: &str, value: &serde_json::Value) -> Result<PathBuf, Failure> {
    let path = dir.join(format!("{name}.json"));
    let text = serde_json::to_string_pretty(value).map_err(|e| Failure::Numerical(e.to_string()))?;
    std::fs::write(&path, text + "\n")?;
    Ok(path)
}

pub fn write_text(dir: &Path, name: &str, text: &str) -> Result<PathBuf, Failure> {
    let path = dir.join(name);
    std::fs::write(&path, text)?;
    Ok(path)
}
