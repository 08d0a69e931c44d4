// SPDX-License-Identifier: MIT OR Apache-2.0

//! Single-column CSV input and output.

use crate::ar::TimeSeries;
use crate::error::{Error, Result};
use std::fs::File;
use std::io::{Read, Write};
use std::path::Path;

/// Which CSV column holds the observations.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub enum ColumnSelector {
    #[default]
    First,
    Index(usize),
    Name(String),
}

impl ColumnSelector {
    /// A bare integer selects by 0-based index, anything else by header name.
    pub fn parse(s: &str) -> Self {
        match s.parse::<usize>() {
            Ok(i) => ColumnSelector::Index(i),
            Err(_) => ColumnSelector::Name(s.to_string()),
        }
    }
}

/// Reads one numeric column. A header row is detected when the selected
/// field of the first row is not a number.
pub fn read_series_csv<R: Read>(input: R, column: &ColumnSelector) -> Result<TimeSeries> {
    let mut reader = csv::ReaderBuilder::new()
        .has_headers(false)
        .flexible(true)
        .trim(csv::Trim::All)
        .from_reader(input);
    let mut values = Vec::new();
    let mut index = match column {
        ColumnSelector::First => Some(0),
        ColumnSelector::Index(i) => Some(*i),
        ColumnSelector::Name(_) => None,
    };
    for (row, record) in reader.records().enumerate() {
        let record = record.map_err(|e| {
            let line = e.position().map_or(row as u64 + 1, |p| p.line());
            Error::MalformedInput(format!("line {line}: {e}"))
        })?;
        let line = record.position().map_or(row as u64 + 1, |p| p.line());
        if row == 0 {
            if let ColumnSelector::Name(name) = column {
                let i = record.iter().position(|f| f == name).ok_or_else(|| {
                    Error::MalformedInput(format!(
                        "line {line}: no column named '{name}' in the header"
                    ))
                })?;
                index = Some(i);
                continue;
            }
        }
        let i = index.expect("column index resolved");
        let field = record.get(i).ok_or_else(|| {
            Error::MalformedInput(format!(
                "line {line}: row has {} field(s), column {i} is missing",
                record.len()
            ))
        })?;
        match field.parse::<f64>() {
            Ok(v) if v.is_finite() => values.push(v),
            Ok(_) => {
                return Err(Error::MalformedInput(format!(
                    "line {line}: value '{field}' is not finite"
                )))
            }
            Err(_) if row == 0 => continue,
            Err(_) => {
                return Err(Error::MalformedInput(format!(
                    "line {line}: cannot parse '{field}' as a number"
                )))
            }
        }
    }
    if values.is_empty() {
        return Err(Error::MalformedInput("no observations found".into()));
    }
    TimeSeries::new(values)
}

pub fn read_series_file(path: &Path, column: &ColumnSelector) -> Result<TimeSeries> {
    let file =
        File::open(path).map_err(|e| Error::Io(format!("cannot open {}: {e}", path.display())))?;
    read_series_csv(file, column)
}

/// Header `x`, then one observation per line.
pub fn write_series_csv<W: Write>(series: &TimeSeries, out: W) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    let io = |e: csv::Error| Error::Io(e.to_string());
    w.write_record(["x"]).map_err(io)?;
    for v in series.values() {
        w.write_record([v.to_string()]).map_err(io)?;
    }
    w.flush().map_err(|e| Error::Io(e.to_string()))
}
