//! Plain-text grid files.
//!
//! ```text
//! # ptherm grid
//! # nx=3
//! # ny=2
//! # dx=0.0005
//! # dy=0.001
//! # length_units=m
//! # mode=rise
//! # units=K
//! 1.5,2.25,1.5
//! 1.0,1.25,1.0
//! ```
//!
//! Rows are y indices from `y = 0` upward and columns are x indices. Values
//! use the shortest representation that parses back to the same `f64`.

use std::fmt::Write as _;

use crate::thermal::{GridMode, ThermalGrid};

#[derive(Debug, thiserror::Error, PartialEq)]
pub enum GridParseError {
    #[error("line {line}: {message}")]
    Line { line: usize, message: String },
    #[error("missing header field `{0}`")]
    MissingHeader(&'static str),
    #[error("expected {expected} rows, found {found}")]
    RowCount { expected: usize, found: usize },
}

/// Shortest round-trip rendering of a float.
pub fn fmt_f64(v: f64) -> String {
    format!("{v:?}")
}

pub fn write_grid(grid: &ThermalGrid<f64>) -> String {
    let mut out = String::new();
    out.push_str("# ptherm grid\n");
    let _ = writeln!(out, "# nx={}", grid.nx);
    let _ = writeln!(out, "# ny={}", grid.ny);
    let _ = writeln!(out, "# dx={}", fmt_f64(grid.dx));
    let _ = writeln!(out, "# dy={}", fmt_f64(grid.dy));
    out.push_str("# length_units=m\n");
    let _ = writeln!(out, "# mode={}", grid.mode.as_str());
    out.push_str("# units=K\n");
    for row in grid.values.chunks(grid.nx) {
        let line: Vec<String> = row.iter().map(|&v| fmt_f64(v)).collect();
        out.push_str(&line.join(","));
        out.push('\n');
    }
    out
}

pub fn parse_grid(text: &str) -> Result<ThermalGrid<f64>, GridParseError> {
    let (mut nx, mut ny, mut dx, mut dy, mut mode) = (None, None, None, None, None);
    let mut values = Vec::new();
    let mut rows = 0usize;
    for (k, raw) in text.lines().enumerate() {
        let line = k + 1;
        let err = |message: String| GridParseError::Line { line, message };
        let s = raw.trim();
        if s.is_empty() {
            continue;
        }
        if let Some(h) = s.strip_prefix('#') {
            let Some((key, value)) = h.trim().split_once('=') else {
                continue;
            };
            let value = value.trim();
            let usize_of = |v: &str| v.parse::<usize>().map_err(|e| err(format!("{key}: {e}")));
            let f64_of = |v: &str| v.parse::<f64>().map_err(|e| err(format!("{key}: {e}")));
            match key.trim() {
                "nx" => nx = Some(usize_of(value)?),
                "ny" => ny = Some(usize_of(value)?),
                "dx" => dx = Some(f64_of(value)?),
                "dy" => dy = Some(f64_of(value)?),
                "mode" => mode = Some(value.parse::<GridMode>().map_err(|e| err(e.to_string()))?),
                "units" if value != "K" => return Err(err(format!("unsupported units `{value}`"))),
                "length_units" if value != "m" => return Err(err(format!("unsupported length units `{value}`"))),
                _ => {}
            }
            continue;
        }
        let nx = nx.ok_or(GridParseError::MissingHeader("nx"))?;
        let before = values.len();
        for cell in s.split(',') {
            values.push(cell.trim().parse::<f64>().map_err(|e| err(format!("`{cell}`: {e}")))?);
        }
        if values.len() - before != nx {
            return Err(err(format!("expected {nx} values, found {}", values.len() - before)));
        }
        rows += 1;
    }
    let nx = nx.ok_or(GridParseError::MissingHeader("nx"))?;
    let ny = ny.ok_or(GridParseError::MissingHeader("ny"))?;
    if rows != ny {
        return Err(GridParseError::RowCount { expected: ny, found: rows });
    }
    Ok(ThermalGrid {
        nx,
        ny,
        dx: dx.ok_or(GridParseError::MissingHeader("dx"))?,
        dy: dy.ok_or(GridParseError::MissingHeader("dy"))?,
        mode: mode.ok_or(GridParseError::MissingHeader("mode"))?,
        values,
    })
}
