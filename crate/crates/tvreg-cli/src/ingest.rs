//! CSV input.
//!
//! Two layouts are recognized by their header row:
//!
//! * `date,value`: a raw series, such as daily interest rates. The date
//!   column is carried along as text and otherwise ignored.
//! * `y,x1,...,xd`: a regression dataset with observation times `i/n`.

use std::io::Read;
use std::path::Path;

use tvreg::locstat::{difference_rates, Dataset};

use crate::error::{CliError, CliResult};

#[derive(Debug, Clone, PartialEq)]
pub enum Ingested {
    Series(Vec<f64>),
    Dataset(Dataset),
}

impl Ingested {
    /// The regression dataset; a series is differenced first.
    pub fn into_dataset(self) -> CliResult<Dataset> {
        match self {
            Ingested::Series(r) => Ok(difference_rates(&r)?),
            Ingested::Dataset(d) => Ok(d),
        }
    }
}

pub fn ingest_csv(path: &Path) -> CliResult<Ingested> {
    let file = std::fs::File::open(path).map_err(|source| CliError::Io {
        path: path.display().to_string(),
        source,
    })?;
    parse_csv(file, &path.display().to_string())
}

fn parse_field(field: &str, line: u64, column: usize) -> CliResult<f64> {
    let parse_err = |message: String| CliError::Parse {
        line,
        column,
        message,
    };
    let field = field.trim();
    if field.is_empty() {
        return Err(parse_err("empty value".into()));
    }
    let v: f64 = field
        .parse()
        .map_err(|_| parse_err(format!("'{field}' is not a number")))?;
    if !v.is_finite() {
        return Err(parse_err(format!("'{field}' is not finite")));
    }
    Ok(v)
}

/// Parses either layout from any reader; `name` labels error messages.
pub fn parse_csv(reader: impl Read, name: &str) -> CliResult<Ingested> {
    let mut rdr = csv::ReaderBuilder::new()
        .has_headers(true)
        .trim(csv::Trim::All)
        .flexible(true)
        .from_reader(reader);
    let csv_err = |e: csv::Error| {
        let line = e.position().map_or(0, |p| p.line());
        CliError::Parse {
            line,
            column: 0,
            message: e.to_string(),
        }
    };
    let header: Vec<String> = rdr
        .headers()
        .map_err(csv_err)?
        .iter()
        .map(|h| h.to_ascii_lowercase())
        .collect();
    if header.is_empty() || header.iter().all(|h| h.is_empty()) {
        return Err(CliError::EmptyFile(name.to_string()));
    }
    let series = match header.first().map(String::as_str) {
        Some("date") if header.len() == 2 && header[1] == "value" => true,
        Some("y") if header.len() >= 2 => false,
        _ => {
            return Err(CliError::Parse {
                line: 1,
                column: 1,
                message: format!(
                    "expected header 'date,value' or 'y,x1,...', found '{}'",
                    header.join(",")
                ),
            })
        }
    };
    let width = header.len();
    let mut y = Vec::new();
    let mut x = Vec::new();
    for record in rdr.records() {
        let record = record.map_err(csv_err)?;
        let line = record.position().map_or(0, |p| p.line());
        if record.len() != width {
            return Err(CliError::Parse {
                line,
                column: record.len().min(width) + 1,
                message: format!("expected {width} fields, found {}", record.len()),
            });
        }
        if series {
            y.push(parse_field(&record[1], line, 2)?);
        } else {
            y.push(parse_field(&record[0], line, 1)?);
            for c in 1..width {
                x.push(parse_field(&record[c], line, c + 1)?);
            }
        }
    }
    if y.is_empty() {
        return Err(CliError::EmptyFile(name.to_string()));
    }
    if series {
        Ok(Ingested::Series(y))
    } else {
        Ok(Ingested::Dataset(Dataset::new(y, x, width - 1)?))
    }
}
