//! Experiment configuration files (TOML primary, JSON accepted) and their
//! canonical hash.
//!
//! Defaults mirror the reference protocol: `ε = 0.0001`, `floor = 0.001`,
//! `R = 1000`, `H = 0.3`, `σ = 1`, `a = 2`, and `x0 = 1` (the initial value
//! is not pinned by the original study; it is surfaced here prominently).

use crate::error::{CliError, CliResult};
use rough_bessel::bessel::ModelParams;
use rough_bessel::experiment::{Cell, EstimatorKind, ExperimentConfig};
use rough_bessel::fbm::Hurst;
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};
use std::path::Path;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct ModelFile {
    pub x0: f64,
    pub a: f64,
    pub sigma: f64,
    pub hurst: f64,
    pub epsilon: f64,
}

impl Default for ModelFile {
    fn default() -> Self {
        ModelFile {
            x0: 1.0,
            a: 2.0,
            sigma: 1.0,
            hurst: 0.3,
            epsilon: 1e-4,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum EstimatorName {
    Hurst,
    SigmaKnown,
    SigmaPlugin,
    Drift,
}

impl EstimatorName {
    pub fn kind(self) -> EstimatorKind {
        match self {
            EstimatorName::Hurst => EstimatorKind::Hurst,
            EstimatorName::SigmaKnown => EstimatorKind::VolatilityKnownHurst,
            EstimatorName::SigmaPlugin => EstimatorKind::VolatilityPluginHurst,
            EstimatorName::Drift => EstimatorKind::Drift,
        }
    }

    pub fn label(self) -> &'static str {
        match self {
            EstimatorName::Hurst => "hurst",
            EstimatorName::SigmaKnown => "sigma-known",
            EstimatorName::SigmaPlugin => "sigma-plugin",
            EstimatorName::Drift => "drift",
        }
    }
}

fn default_horizon() -> f64 {
    1.0
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CellFile {
    pub estimator: EstimatorName,
    /// Observation grid size. Optional for drift cells, where it defaults to
    /// `drift_resolution × horizon`.
    #[serde(default)]
    pub n: Option<usize>,
    #[serde(default = "default_horizon")]
    pub horizon: f64,
    /// Simulation grid size (a multiple of `n`); defaults to `n`.
    #[serde(default)]
    pub sim_steps: Option<usize>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct ExperimentFile {
    pub model: ModelFile,
    pub replications: usize,
    pub base_seed: u64,
    /// Per-unit-time resolution of the drift estimator's integral sum.
    pub drift_resolution: usize,
    pub floor: f64,
    /// Lower clamp applied to the simulated state, mirroring the estimator
    /// floor; set to 0 to run the bare Euler scheme.
    pub state_floor: f64,
    /// Worker-count hint; 0 uses the default pool. Not part of the config
    /// hash: it changes the schedule, never the results.
    pub workers: usize,
    pub cells: Vec<CellFile>,
}

impl Default for ExperimentFile {
    fn default() -> Self {
        ExperimentFile {
            model: ModelFile::default(),
            replications: 1000,
            base_seed: 42,
            drift_resolution: 10_000,
            floor: 1e-3,
            state_floor: 1e-3,
            workers: 0,
            cells: Vec::new(),
        }
    }
}

/// Parse a config file by extension: `.json` is JSON, anything else TOML.
/// Schema violations report the offending field path.
pub fn parse_file(path: &Path, raw: &str) -> CliResult<ExperimentFile> {
    let is_json = path
        .extension()
        .is_some_and(|e| e.eq_ignore_ascii_case("json"));
    if is_json {
        let mut de = serde_json::Deserializer::from_str(raw);
        serde_path_to_error::deserialize(&mut de).map_err(|e| {
            CliError::Usage(format!(
                "{}: {} (at {})",
                path.display(),
                e.inner(),
                e.path()
            ))
        })
    } else {
        let de = toml::Deserializer::parse(raw)
            .map_err(|e| CliError::Usage(format!("{}: {e}", path.display())))?;
        serde_path_to_error::deserialize(de).map_err(|e| {
            CliError::Usage(format!(
                "{}: {} (at {})",
                path.display(),
                e.inner(),
                e.path()
            ))
        })
    }
}

pub fn load_file(path: &Path) -> CliResult<ExperimentFile> {
    let raw = std::fs::read_to_string(path).map_err(CliError::io(path))?;
    parse_file(path, &raw)
}

/// A cell with every default resolved.
#[derive(Debug, Clone, Serialize, PartialEq)]
pub struct ResolvedCell {
    pub estimator: EstimatorName,
    pub n: usize,
    pub horizon: f64,
    pub sim_steps: usize,
}

/// Canonical, fully-resolved form of a configuration. Hashing this (rather
/// than the raw file) makes the digest independent of key order, whitespace,
/// comments, and spelled-out defaults.
#[derive(Debug, Clone, Serialize, PartialEq)]
pub struct ResolvedConfig {
    pub model: ModelFile,
    pub replications: usize,
    pub base_seed: u64,
    pub drift_resolution: usize,
    pub floor: f64,
    pub state_floor: f64,
    pub cells: Vec<ResolvedCell>,
}

impl ResolvedConfig {
    pub fn canonical_json(&self) -> String {
        serde_json::to_string(self).expect("resolved config serializes")
    }

    pub fn hash_hex(&self) -> String {
        let digest = Sha256::digest(self.canonical_json().as_bytes());
        digest.iter().map(|b| format!("{b:02x}")).collect()
    }

    /// Core experiment configuration plus the estimator labels per cell.
    pub fn to_core(&self, workers: usize) -> CliResult<ExperimentConfig<f64>> {
        let hurst = Hurst::new(self.model.hurst)?;
        let model = ModelParams::new(
            self.model.x0,
            self.model.a,
            self.model.sigma,
            hurst,
            self.model.epsilon,
        )?;
        let cells = self
            .cells
            .iter()
            .map(|c| Cell {
                steps: c.n,
                horizon: c.horizon,
                estimator: c.estimator.kind(),
                sim_steps: Some(c.sim_steps),
            })
            .collect();
        Ok(ExperimentConfig {
            model,
            cells,
            replications: self.replications,
            base_seed: self.base_seed,
            drift_floor: self.floor,
            state_floor: (self.state_floor > 0.0).then_some(self.state_floor),
            workers,
        })
    }
}

pub fn resolve(file: &ExperimentFile) -> CliResult<ResolvedConfig> {
    let mut cells = Vec::with_capacity(file.cells.len());
    for (i, cell) in file.cells.iter().enumerate() {
        if !cell.horizon.is_finite() || cell.horizon <= 0.0 {
            return Err(CliError::Usage(format!(
                "cells[{i}].horizon must be positive"
            )));
        }
        let n = match (cell.n, cell.estimator) {
            (Some(n), _) => n,
            (None, EstimatorName::Drift) => {
                let derived = (file.drift_resolution as f64 * cell.horizon).round() as usize;
                if derived == 0 {
                    return Err(CliError::Usage(format!(
                        "cells[{i}]: drift_resolution x horizon gives an empty grid"
                    )));
                }
                derived
            }
            (None, _) => {
                return Err(CliError::Usage(format!(
                    "cells[{i}].n is required for estimator {:?}",
                    cell.estimator.label()
                )))
            }
        };
        let sim_steps = cell.sim_steps.unwrap_or(n);
        if sim_steps % n != 0 || sim_steps == 0 {
            return Err(CliError::Usage(format!(
                "cells[{i}].sim_steps = {sim_steps} must be a positive multiple of n = {n}"
            )));
        }
        cells.push(ResolvedCell {
            estimator: cell.estimator,
            n,
            horizon: cell.horizon,
            sim_steps,
        });
    }
    Ok(ResolvedConfig {
        model: file.model.clone(),
        replications: file.replications,
        base_seed: file.base_seed,
        drift_resolution: file.drift_resolution,
        floor: file.floor,
        state_floor: file.state_floor,
        cells,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::path::PathBuf;

    fn toml_path() -> PathBuf {
        PathBuf::from("config.toml")
    }

    #[test]
    fn defaults_mirror_the_reference_protocol() {
        let file = parse_file(&toml_path(), "").unwrap();
        assert_eq!(file.model.epsilon, 1e-4);
        assert_eq!(file.model.hurst, 0.3);
        assert_eq!(file.model.sigma, 1.0);
        assert_eq!(file.model.a, 2.0);
        assert_eq!(file.model.x0, 1.0);
        assert_eq!(file.floor, 1e-3);
        assert_eq!(file.replications, 1000);
        assert_eq!(file.drift_resolution, 10_000);
    }

    #[test]
    fn hash_ignores_key_order_and_whitespace() {
        let a = parse_file(
            &toml_path(),
            "replications = 7\nbase_seed = 3\n\n[model]\nhurst = 0.25\nsigma = 1.5\n",
        )
        .unwrap();
        let b = parse_file(
            &toml_path(),
            "base_seed   = 3\nreplications=7\n[model]\nsigma=1.5\nhurst  = 0.25\n",
        )
        .unwrap();
        assert_eq!(
            resolve(&a).unwrap().hash_hex(),
            resolve(&b).unwrap().hash_hex()
        );
        let c = parse_file(&toml_path(), "base_seed = 4\nreplications = 7\n").unwrap();
        assert_ne!(
            resolve(&a).unwrap().hash_hex(),
            resolve(&c).unwrap().hash_hex()
        );
    }

    #[test]
    fn hash_ignores_spelled_out_defaults() {
        let implicit = parse_file(&toml_path(), "").unwrap();
        let explicit = parse_file(&toml_path(), "replications = 1000\nfloor = 0.001\n").unwrap();
        assert_eq!(
            resolve(&implicit).unwrap().hash_hex(),
            resolve(&explicit).unwrap().hash_hex()
        );
    }

    #[test]
    fn json_configs_are_accepted() {
        let file = parse_file(
            &PathBuf::from("config.json"),
            r#"{"replications": 12, "cells": [{"estimator": "hurst", "n": 64}]}"#,
        )
        .unwrap();
        assert_eq!(file.replications, 12);
        assert_eq!(file.cells[0].estimator, EstimatorName::Hurst);
    }

    #[test]
    fn schema_violations_carry_field_paths() {
        let err =
            parse_file(&toml_path(), "[[cells]]\nestimator = \"hurst\"\nn = -4\n").unwrap_err();
        assert_eq!(err.exit_code(), 2);
        assert!(err.to_string().contains("cells"), "{err}");
        let err = parse_file(&toml_path(), "[model]\nbogus = 1\n").unwrap_err();
        assert!(err.to_string().contains("model"), "{err}");
    }

    #[test]
    fn drift_cells_derive_n_from_resolution() {
        let file = parse_file(
            &toml_path(),
            "drift_resolution = 100\n[[cells]]\nestimator = \"drift\"\nhorizon = 10.0\n",
        )
        .unwrap();
        let resolved = resolve(&file).unwrap();
        assert_eq!(resolved.cells[0].n, 1000);
        assert_eq!(resolved.cells[0].sim_steps, 1000);
    }

    #[test]
    fn non_drift_cells_require_n() {
        let file = parse_file(&toml_path(), "[[cells]]\nestimator = \"sigma-known\"\n").unwrap();
        let err = resolve(&file).unwrap_err();
        assert!(err.to_string().contains("cells[0].n"), "{err}");
    }

    #[test]
    fn sim_steps_must_divide_evenly() {
        let file = parse_file(
            &toml_path(),
            "[[cells]]\nestimator = \"hurst\"\nn = 100\nsim_steps = 250\n",
        )
        .unwrap();
        assert!(resolve(&file).is_err());
    }
}
