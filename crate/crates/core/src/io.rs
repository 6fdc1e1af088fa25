//! Plain-text and JSON formats for curves, counterpoise scans and field
//! scans.
//!
//! Column text: one record per line, fields separated by any whitespace,
//! `#` starts a comment. JSON: an array of arrays (`[[R, V], ...]`) or of
//! objects with named fields.

use std::fs;
use std::path::Path;

use serde::de::DeserializeOwned;
use serde::Deserialize;

use crate::error::{Error, Result};
use crate::post::{CounterpoiseRow, FieldEnergyScan};

/// Parses whitespace-separated numeric columns. Every record must have
/// exactly `columns` fields.
pub fn parse_columns(text: &str, columns: usize) -> Result<Vec<Vec<f64>>> {
    let mut rows = Vec::new();
    for (lineno, line) in text.lines().enumerate() {
        let content = line.split('#').next().unwrap_or("");
        let mut row = Vec::with_capacity(columns);
        let mut rest = content;
        let mut offset = 0;
        loop {
            let trimmed = rest.trim_start();
            offset += rest.len() - trimmed.len();
            if trimmed.is_empty() {
                break;
            }
            let end = trimmed.find(char::is_whitespace).unwrap_or(trimmed.len());
            let token = &trimmed[..end];
            let column = content[..offset].chars().count() + 1;
            let value: f64 = token.parse().map_err(|_| Error::Parse {
                line: lineno + 1,
                column,
                message: format!("'{token}' is not a number"),
            })?;
            if !value.is_finite() {
                return Err(Error::Parse { line: lineno + 1, column, message: format!("'{token}' is not finite") });
            }
            if row.len() == columns {
                return Err(Error::Parse {
                    line: lineno + 1,
                    column,
                    message: format!("expected {columns} columns"),
                });
            }
            row.push(value);
            offset += end;
            rest = &trimmed[end..];
        }
        if row.is_empty() {
            continue;
        }
        if row.len() != columns {
            return Err(Error::Parse {
                line: lineno + 1,
                column: content.trim_end().chars().count() + 1,
                message: format!("expected {columns} columns, found {}", row.len()),
            });
        }
        rows.push(row);
    }
    Ok(rows)
}

fn looks_like_json(text: &str) -> bool {
    matches!(text.trim_start().chars().next(), Some('[' | '{'))
}

fn parse_json<T: DeserializeOwned>(text: &str) -> Result<T> {
    serde_json::from_str(text).map_err(|e| Error::Parse { line: e.line(), column: e.column(), message: e.to_string() })
}

#[derive(Deserialize)]
#[serde(untagged)]
enum CurvePoint {
    Pair([f64; 2]),
    Named { r: f64, v: f64 },
}

/// (R, value) pairs from column text or JSON.
pub fn parse_curve(text: &str) -> Result<Vec<(f64, f64)>> {
    if looks_like_json(text) {
        let points: Vec<CurvePoint> = parse_json(text)?;
        Ok(points
            .into_iter()
            .map(|p| match p {
                CurvePoint::Pair([r, v]) | CurvePoint::Named { r, v } => (r, v),
            })
            .collect())
    } else {
        Ok(parse_columns(text, 2)?.into_iter().map(|c| (c[0], c[1])).collect())
    }
}

#[derive(Deserialize)]
#[serde(untagged)]
enum CounterpoiseRecord {
    Array([f64; 4]),
    Named(CounterpoiseRow),
}

/// Counterpoise rows (R, E_dimer, E_A_ghost, E_B_ghost) from column text or JSON.
pub fn parse_counterpoise(text: &str) -> Result<Vec<CounterpoiseRow>> {
    let from_array = |[r, e_dimer, e_a_ghost, e_b_ghost]: [f64; 4]| CounterpoiseRow { r, e_dimer, e_a_ghost, e_b_ghost };
    if looks_like_json(text) {
        let records: Vec<CounterpoiseRecord> = parse_json(text)?;
        Ok(records
            .into_iter()
            .map(|rec| match rec {
                CounterpoiseRecord::Array(a) => from_array(a),
                CounterpoiseRecord::Named(row) => row,
            })
            .collect())
    } else {
        Ok(parse_columns(text, 4)?.into_iter().map(|c| from_array([c[0], c[1], c[2], c[3]])).collect())
    }
}

/// Field scan JSON: `{"field_step": F, "energies": {"-2": .., "-1": .., "1": .., "2": ..}}`.
pub fn parse_field_scan(text: &str) -> Result<FieldEnergyScan> {
    parse_json(text)
}

pub fn read_text(path: &Path) -> Result<String> {
    fs::read_to_string(path).map_err(|e| Error::Io(format!("{}: {e}", path.display())))
}

pub fn read_curve(path: &Path) -> Result<Vec<(f64, f64)>> {
    parse_curve(&read_text(path)?)
}

/// Two-column text with 17 significant digits, enough to reproduce every
/// value exactly when read back.
pub fn format_curve(points: &[(f64, f64)], header: Option<&str>) -> String {
    let mut out = String::new();
    if let Some(h) = header {
        for line in h.lines() {
            out.push_str("# ");
            out.push_str(line);
            out.push('\n');
        }
    }
    for (r, v) in points {
        out.push_str(&format!("{r:.16e} {v:.16e}\n"));
    }
    out
}
