//! Serialization of estimates, experiment tables, and run manifests.
//!
//! Table and plot-data CSVs contain only seed-determined quantities written
//! with 17-significant-digit floats, so identical configurations produce
//! byte-identical files at any worker count. The manifest records wall-clock
//! timings and is the one output that varies between runs.

use crate::config::{EstimatorName, ResolvedConfig};
use crate::csvpath::format_float;
use rough_bessel::experiment::{CellOutcome, ExperimentSummary};
use rough_bessel::EstimationResult64;
use serde::Serialize;
use std::collections::BTreeMap;
use std::io::Write;

/// JSON report for a single estimate: `{estimate, valid, diagnostics}`.
pub fn estimate_report_json(result: &EstimationResult64) -> String {
    #[derive(Serialize)]
    struct Report<'a> {
        estimate: f64,
        valid: bool,
        diagnostics: BTreeMap<&'a str, f64>,
    }
    let report = Report {
        estimate: result.estimate,
        valid: result.valid,
        diagnostics: result.diagnostics.iter().map(|(k, v)| (*k, *v)).collect(),
    };
    serde_json::to_string_pretty(&report).expect("report serializes")
}

pub const TABLE_HEADER: &str =
    "cell_id,n,T,estimator,mean,variance,cv,invalid_count,q_min,q1,median,q3,q_max";

/// Per-cell summary table. Failed cells keep their row with NaN statistics
/// so the layout always mirrors the configuration.
pub fn write_table_csv(
    config: &ResolvedConfig,
    summary: &ExperimentSummary<f64>,
    mut out: impl Write,
) -> std::io::Result<()> {
    writeln!(out, "{TABLE_HEADER}")?;
    for (cell_config, outcome) in config.cells.iter().zip(summary.cells.iter()) {
        let label = cell_config.estimator.label();
        match outcome {
            Ok(cell) => {
                writeln!(
                    out,
                    "{},{},{},{},{},{},{},{},{},{},{},{},{}",
                    cell.cell_index,
                    cell_config.n,
                    format_float(cell_config.horizon),
                    label,
                    format_float(cell.mean),
                    format_float(cell.variance),
                    format_float(cell.cv),
                    cell.invalid_count,
                    format_float(cell.boxplot.min),
                    format_float(cell.boxplot.q1),
                    format_float(cell.boxplot.median),
                    format_float(cell.boxplot.q3),
                    format_float(cell.boxplot.max),
                )?;
            }
            Err(failure) => {
                let nan = format_float(f64::NAN);
                writeln!(
                    out,
                    "{},{},{},{},{nan},{nan},{nan},{},{nan},{nan},{nan},{nan},{nan}",
                    failure.cell_index,
                    cell_config.n,
                    format_float(cell_config.horizon),
                    label,
                    failure.invalid_count,
                )?;
            }
        }
    }
    Ok(())
}

/// Raw per-replication estimates for external plotting.
pub fn write_plot_data_csv(
    config: &ResolvedConfig,
    summary: &ExperimentSummary<f64>,
    mut out: impl Write,
) -> std::io::Result<()> {
    writeln!(out, "cell_id,estimator,replication,seed,estimate,valid")?;
    for (cell_config, outcome) in config.cells.iter().zip(summary.cells.iter()) {
        if let Ok(cell) = outcome {
            for o in &cell.outcomes {
                writeln!(
                    out,
                    "{},{},{},{},{},{}",
                    cell.cell_index,
                    cell_config.estimator.label(),
                    o.replication,
                    o.seed,
                    format_float(o.estimate),
                    o.valid,
                )?;
            }
        }
    }
    Ok(())
}

/// Provenance record written next to every experiment table.
#[derive(Debug, Serialize)]
pub struct RunManifest {
    pub config_hash: String,
    pub tool_version: String,
    pub outputs: Vec<String>,
    pub timings: BTreeMap<String, f64>,
}

impl RunManifest {
    pub fn new(
        config: &ResolvedConfig,
        outputs: Vec<String>,
        summary: &ExperimentSummary<f64>,
    ) -> Self {
        let mut timings = BTreeMap::new();
        timings.insert("total_secs".to_string(), summary.wall_time_secs);
        for cell in summary.cells.iter().flatten() {
            timings.insert(
                format!("cell_{}_secs", cell.cell_index),
                cell.wall_time_secs,
            );
        }
        RunManifest {
            config_hash: config.hash_hex(),
            tool_version: env!("CARGO_PKG_VERSION").to_string(),
            outputs,
            timings,
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("manifest serializes")
    }
}

/// One human-readable line per cell for the console.
pub fn cell_console_line(config: &ResolvedConfig, outcome: &CellOutcome<f64>) -> String {
    match outcome {
        Ok(cell) => {
            let label = config.cells[cell.cell_index].estimator.label();
            format!(
                "cell {} ({label}, n = {}, T = {}): mean {:.6}, variance {:.6e}, cv {:.4}, invalid {}",
                cell.cell_index,
                cell.cell.steps,
                cell.cell.horizon,
                cell.mean,
                cell.variance,
                cell.cv,
                cell.invalid_count
            )
        }
        Err(failure) => format!("cell {}: failed: {}", failure.cell_index, failure.message),
    }
}

/// Estimator label as used in table CSVs.
pub fn estimator_label(name: EstimatorName) -> &'static str {
    name.label()
}
