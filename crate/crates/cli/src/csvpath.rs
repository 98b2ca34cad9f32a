//! Bit-stable CSV serialization of simulated paths.
//!
//! Floats are written with 17 significant decimal digits, which round-trips
//! every `f64` exactly; files are UTF-8 with LF line endings. Simulated
//! process paths use the header `t,x,l,b` (time, process, accumulated
//! integral functional, driving fBm); bare fBm paths use `t,value`.

use crate::error::{CliError, CliResult};
use rough_bessel::{BesselPath64, FbmPath64, ObservedPath64};
use std::io::{BufRead, Write};

/// 17-significant-digit decimal form, lossless for `f64`.
pub fn format_float(v: f64) -> String {
    format!("{v:.16e}")
}

pub fn write_bessel_csv(path: &BesselPath64, mut out: impl Write) -> std::io::Result<()> {
    writeln!(out, "t,x,l,b")?;
    for k in 0..path.x.len() {
        writeln!(
            out,
            "{},{},{},{}",
            format_float(path.times[k]),
            format_float(path.x[k]),
            format_float(path.l[k]),
            format_float(path.driver.values[k]),
        )?;
    }
    Ok(())
}

pub fn write_fbm_csv(path: &FbmPath64, mut out: impl Write) -> std::io::Result<()> {
    writeln!(out, "t,value")?;
    for k in 0..path.values.len() {
        writeln!(
            out,
            "{},{}",
            format_float(path.times[k]),
            format_float(path.values[k])
        )?;
    }
    Ok(())
}

/// A parsed path CSV: grid times plus the observed column.
#[derive(Debug)]
pub struct ParsedPath {
    pub observed: ObservedPath64,
    /// Name of the column the observations came from (`x` or `value`).
    pub column: String,
}

fn parse_field(raw: &str, line: usize) -> CliResult<f64> {
    raw.trim()
        .parse::<f64>()
        .map_err(|_| CliError::Usage(format!("line {line}: cannot parse {raw:?} as a number")))
}

/// Read a path CSV produced by `simulate` (`t,x,...`) or the fBm debug dump
/// (`t,value`). Errors carry the offending 1-based line number.
pub fn read_path_csv<R: BufRead>(reader: R) -> CliResult<ParsedPath> {
    let mut lines = reader.lines().enumerate();
    let header = match lines.next() {
        Some((_, Ok(line))) => line,
        Some((_, Err(e))) => return Err(CliError::Usage(format!("line 1: {e}"))),
        None => return Err(CliError::Usage("line 1: empty file".into())),
    };
    let columns: Vec<&str> = header.split(',').map(str::trim).collect();
    let t_col = columns
        .iter()
        .position(|c| *c == "t")
        .ok_or_else(|| CliError::Usage("line 1: missing column \"t\"".into()))?;
    let (value_col, column) = match columns.iter().position(|c| *c == "x") {
        Some(i) => (i, "x"),
        None => match columns.iter().position(|c| *c == "value") {
            Some(i) => (i, "value"),
            None => {
                return Err(CliError::Usage(
                    "line 1: need a column named \"x\" or \"value\"".into(),
                ))
            }
        },
    };

    let mut times = Vec::new();
    let mut values = Vec::new();
    for (index, line) in lines {
        let line_no = index + 1;
        let line = line.map_err(|e| CliError::Usage(format!("line {line_no}: {e}")))?;
        if line.is_empty() {
            continue;
        }
        let fields: Vec<&str> = line.split(',').collect();
        if fields.len() != columns.len() {
            return Err(CliError::Usage(format!(
                "line {line_no}: expected {} fields, found {}",
                columns.len(),
                fields.len()
            )));
        }
        times.push(parse_field(fields[t_col], line_no)?);
        values.push(parse_field(fields[value_col], line_no)?);
    }
    if values.len() < 2 {
        return Err(CliError::Usage("need at least two data rows".into()));
    }
    let horizon = *times.last().unwrap();
    let observed = ObservedPath64::from_values(values, horizon)?;
    Ok(ParsedPath {
        observed,
        column: column.to_string(),
    })
}
