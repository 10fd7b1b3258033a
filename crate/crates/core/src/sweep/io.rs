//! CSV and JSON persistence of phase diagrams.

use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};

use super::diagram::{CellFailure, PhaseDiagram, Provenance};
use super::grid::GridSpec;
use crate::error::{Error, Result};

pub const CSV_CORNER: &str = "delta\\p";

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ExportFormat {
    Csv,
    Json,
}

impl std::str::FromStr for ExportFormat {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "csv" => Ok(ExportFormat::Csv),
            "json" => Ok(ExportFormat::Json),
            other => Err(Error::InvalidArgument(format!("unknown format `{other}`"))),
        }
    }
}

/// Everything but the overlap matrix; stored next to a CSV export.
#[derive(Clone, Debug, Serialize, Deserialize)]
struct Sidecar {
    grid: GridSpec,
    initial_overlap: f64,
    provenance: Provenance,
    failures: Vec<CellFailure>,
}

/// Decimal with 12 significant digits, trailing zeros trimmed.
pub fn format_sig12(x: f64) -> String {
    if x == 0.0 || !x.is_finite() {
        return if x == 0.0 { "0".into() } else { x.to_string() };
    }
    let sci = format!("{x:.11e}");
    let exp: i32 = sci[sci.find('e').expect("exponent") + 1..]
        .parse()
        .expect("exponent");
    let mut s = if (-5..12).contains(&exp) {
        format!("{:.*}", (11 - exp).max(0) as usize, x)
    } else {
        sci.clone()
    };
    if !s.contains('e') && s.contains('.') {
        s.truncate(s.trim_end_matches('0').trim_end_matches('.').len());
    } else if let Some(e) = s.find('e') {
        let (m, tail) = s.split_at(e);
        let m = m.trim_end_matches('0').trim_end_matches('.');
        s = format!("{m}{tail}");
    }
    s
}

pub fn sidecar_path(csv: &Path) -> PathBuf {
    let mut s = csv.as_os_str().to_owned();
    s.push(".json");
    PathBuf::from(s)
}

pub fn to_csv(pd: &PhaseDiagram) -> String {
    let mut out = String::from(CSV_CORNER);
    for p in pd.grid.p_values() {
        let _ = write!(out, ",{p}");
    }
    out.push('\n');
    for (d, row) in pd.grid.delta_values().iter().zip(&pd.overlaps) {
        out.push_str(&format_sig12(*d));
        for v in row {
            out.push(',');
            if let Some(v) = v {
                out.push_str(&format_sig12(*v));
            }
        }
        out.push('\n');
    }
    out
}

fn write(path: &Path, text: &str) -> Result<()> {
    fs::write(path, text).map_err(|e| Error::io(path, e))
}

/// Write a diagram. CSV exports get a `<path>.json` sidecar with the provenance.
pub fn export(pd: &PhaseDiagram, format: ExportFormat, path: &Path) -> Result<()> {
    match format {
        ExportFormat::Json => write(path, &serde_json::to_string_pretty(pd)?),
        ExportFormat::Csv => {
            write(path, &to_csv(pd))?;
            let sidecar = Sidecar {
                grid: pd.grid.clone(),
                initial_overlap: pd.initial_overlap,
                provenance: pd.provenance.clone(),
                failures: pd.failures.clone(),
            };
            write(
                &sidecar_path(path),
                &serde_json::to_string_pretty(&sidecar)?,
            )
        }
    }
}

/// Parse the CSV grammar into `(deltas, ps, overlaps)`.
pub fn parse_csv(text: &str) -> Result<(Vec<f64>, Vec<usize>, Vec<Vec<Option<f64>>>)> {
    const FMT: &str = "phase-diagram CSV";
    let mut lines = text
        .lines()
        .enumerate()
        .filter(|(_, l)| !l.trim().is_empty());
    let (_, header) = lines
        .next()
        .ok_or_else(|| Error::parse(FMT, 1, "empty file"))?;
    let mut cols = header.split(',');
    if cols.next().map(str::trim) != Some(CSV_CORNER) {
        return Err(Error::parse(
            FMT,
            1,
            format!("header must start with `{CSV_CORNER}`"),
        ));
    }
    let ps = cols
        .map(|c| {
            c.trim()
                .parse::<usize>()
                .map_err(|_| Error::parse(FMT, 1, format!("bad p value `{c}`")))
        })
        .collect::<Result<Vec<_>>>()?;
    let mut deltas = Vec::new();
    let mut overlaps = Vec::new();
    for (idx, line) in lines {
        let line_no = idx + 1;
        let fields: Vec<&str> = line.split(',').collect();
        if fields.len() != ps.len() + 1 {
            return Err(Error::parse(
                FMT,
                line_no,
                format!("expected {} fields, found {}", ps.len() + 1, fields.len()),
            ));
        }
        let num = |s: &str| {
            s.trim()
                .parse::<f64>()
                .map_err(|_| Error::parse(FMT, line_no, format!("bad number `{s}`")))
        };
        deltas.push(num(fields[0])?);
        overlaps.push(
            fields[1..]
                .iter()
                .map(|f| {
                    if f.trim().is_empty() {
                        Ok(None)
                    } else {
                        num(f).map(Some)
                    }
                })
                .collect::<Result<Vec<_>>>()?,
        );
    }
    Ok((deltas, ps, overlaps))
}

/// Read a diagram written by [`export`]; the format is detected from the content.
pub fn import(path: &Path) -> Result<PhaseDiagram> {
    let text = fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
    if text.trim_start().starts_with('{') {
        let pd: PhaseDiagram = serde_json::from_str(&text)?;
        pd.grid.validate()?;
        return Ok(pd);
    }
    let (deltas, ps, overlaps) = parse_csv(&text)?;
    let side_path = sidecar_path(path);
    let side_text = fs::read_to_string(&side_path).map_err(|e| Error::io(&side_path, e))?;
    let side: Sidecar = serde_json::from_str(&side_text)?;
    let mismatch = side.grid.p_values() != ps.as_slice()
        || side.grid.delta_values().len() != deltas.len()
        || side
            .grid
            .delta_values()
            .iter()
            .zip(&deltas)
            .any(|(a, b)| (a - b).abs() > 1e-9 * a.abs().max(1.0));
    if mismatch {
        return Err(Error::Format {
            format: "phase-diagram CSV",
            message: format!(
                "grid in {} does not match the CSV axes",
                side_path.display()
            ),
        });
    }
    Ok(PhaseDiagram {
        grid: side.grid,
        overlaps,
        initial_overlap: side.initial_overlap,
        provenance: side.provenance,
        failures: side.failures,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sig12_formatting() {
        assert_eq!(format_sig12(0.5), "0.5");
        assert_eq!(format_sig12(1.0), "1");
        assert_eq!(format_sig12(0.123456789012345), "0.123456789012");
        assert_eq!(format_sig12(6.0), "6");
        assert_eq!(format_sig12(0.01), "0.01");
        assert_eq!(format_sig12(1.23456789012345e-7), "1.23456789012e-7");
        assert_eq!(format_sig12(0.0), "0");
    }

    #[test]
    fn csv_rejects_bad_rows() {
        let err = parse_csv("delta\\p,1,2\n0.5,0.1\n").unwrap_err();
        assert!(matches!(err, Error::Parse { line: 2, .. }));
        let err = parse_csv("delta,1\n").unwrap_err();
        assert!(matches!(err, Error::Parse { line: 1, .. }));
    }

    #[test]
    fn missing_cells_are_empty_fields() {
        let (d, p, o) = parse_csv("delta\\p,1,2\n0.5,,0.25\n").unwrap();
        assert_eq!(d, vec![0.5]);
        assert_eq!(p, vec![1, 2]);
        assert_eq!(o, vec![vec![None, Some(0.25)]]);
    }
}
