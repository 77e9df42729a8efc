//! CSV and JSON output.
//!
//! Numbers are written with the shortest decimal representation that parses
//! back to the same `f64`, so repeated runs produce identical bytes and
//! re-ingesting an export reproduces the values exactly. Missing values are
//! empty fields.

use serde::Serialize;

use crate::error::{CliError, CliResult};

/// Shortest round-trip decimal, or the empty string for a missing value.
pub fn number(v: f64) -> String {
    if v.is_finite() {
        format!("{v}")
    } else {
        String::new()
    }
}

pub fn optional(v: Option<f64>) -> String {
    v.map_or_else(String::new, number)
}

#[derive(Debug, Clone, PartialEq, Default)]
pub struct Table {
    pub header: Vec<String>,
    pub rows: Vec<Vec<String>>,
}

impl Table {
    pub fn new<S: Into<String>>(header: impl IntoIterator<Item = S>) -> Self {
        Self {
            header: header.into_iter().map(Into::into).collect(),
            rows: Vec::new(),
        }
    }

    pub fn push(&mut self, row: Vec<String>) {
        debug_assert_eq!(row.len(), self.header.len());
        self.rows.push(row);
    }

    pub fn to_csv(&self) -> CliResult<String> {
        let mut w = csv::WriterBuilder::new()
            .terminator(csv::Terminator::Any(b'\n'))
            .from_writer(Vec::new());
        let fail = |e: csv::Error| CliError::config(format!("cannot write CSV: {e}"));
        w.write_record(&self.header).map_err(fail)?;
        for row in &self.rows {
            w.write_record(row).map_err(fail)?;
        }
        let bytes = w.into_inner().map_err(|e| CliError::config(e.to_string()))?;
        String::from_utf8(bytes).map_err(|e| CliError::config(e.to_string()))
    }
}

pub fn to_json<T: Serialize>(value: &T) -> CliResult<String> {
    let mut s = serde_json::to_string_pretty(value)
        .map_err(|e| CliError::config(format!("cannot serialize JSON: {e}")))?;
    s.push('\n');
    Ok(s)
}
