//! Deterministic Monte Carlo harness: replicated simulate-then-estimate
//! cells over grids of `(n, T, estimator)`.
//!
//! Each cell owns a replication stream rooted at
//! [`cell_stream_root`]`(base_seed, cell_index)`;
//! replication `r` simulates a fresh driver from
//! [`replication_seed`]`(root, r)`, runs the
//! Euler scheme, applies the cell's estimator, and the per-replication
//! results are reduced in replication order. Summaries are therefore a pure
//! function of the configuration, whatever the worker count.

use crate::bessel::{simulate, simulate_with_floor, ModelParams};
use crate::error::{domain, Error, Result};
use crate::estimation::{
    estimate_drift, estimate_hurst, estimate_volatility, estimate_volatility_plugin, ObservedPath,
};
use crate::fbm::FbmSampler;
use crate::scalar::Scalar;
use crate::seed::{cell_stream_root, replication_seed};
use rayon::prelude::*;
use std::time::Instant;

/// Statistic computed from each simulated path of a cell.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum EstimatorKind {
    /// Hurst-index estimator from the variation ratio.
    Hurst,
    /// Volatility estimator with the true Hurst index supplied.
    VolatilityKnownHurst,
    /// Volatility estimator with the Hurst index estimated and plugged in.
    VolatilityPluginHurst,
    /// Drift estimator from the terminal value and the reciprocal integral.
    Drift,
}

impl EstimatorKind {
    /// Hurst-family estimators need at least two grid steps.
    pub fn min_steps(self) -> usize {
        match self {
            EstimatorKind::Hurst | EstimatorKind::VolatilityPluginHurst => 2,
            EstimatorKind::VolatilityKnownHurst | EstimatorKind::Drift => 1,
        }
    }
}

/// One experiment cell: observation grid size, horizon and the statistic to
/// compute.
///
/// The Euler scheme may run on a finer grid than the observations
/// (`sim_steps`, a multiple of `steps`): the estimators then see every
/// `sim_steps / steps`-th node. Replicated studies over several observation
/// sizes conventionally simulate once at the finest resolution; a coarse
/// simulation grid also exaggerates the regularized drift's kick when the
/// state crosses zero, so the refinement is what makes low-`n` cells behave
/// like discretely observed paths of the underlying process.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Cell<T> {
    pub steps: usize,
    pub horizon: T,
    pub estimator: EstimatorKind,
    /// Simulation grid; `None` means simulate on the observation grid.
    pub sim_steps: Option<usize>,
}

impl<T> Cell<T> {
    pub fn simulation_steps(&self) -> usize {
        self.sim_steps.unwrap_or(self.steps)
    }
}

/// Full experiment description.
#[derive(Debug, Clone)]
pub struct ExperimentConfig<T> {
    pub model: ModelParams<T>,
    pub cells: Vec<Cell<T>>,
    pub replications: usize,
    pub base_seed: u64,
    /// Floor applied inside the drift estimator's reciprocal sum.
    pub drift_floor: T,
    /// Clamp the simulated state from below at this level
    /// ([`simulate_with_floor`]); `None` runs the bare Euler scheme. The
    /// reproduction protocol floors the state at the same level as the
    /// estimator.
    pub state_floor: Option<T>,
    /// Worker-count hint; 0 means the global thread pool.
    pub workers: usize,
}

impl<T: Scalar> ExperimentConfig<T> {
    pub fn validate(&self) -> Result<()> {
        if self.replications == 0 {
            return Err(domain("replications must be at least 1"));
        }
        if !self.drift_floor.is_finite() || self.drift_floor <= T::zero() {
            return Err(domain("drift floor must be finite and positive"));
        }
        if let Some(floor) = self.state_floor {
            if !floor.is_finite() || floor <= T::zero() {
                return Err(domain("state floor must be finite and positive"));
            }
        }
        for (i, cell) in self.cells.iter().enumerate() {
            if cell.steps < cell.estimator.min_steps() {
                return Err(domain(format!(
                    "cell {i}: estimator {:?} needs n >= {}, got {}",
                    cell.estimator,
                    cell.estimator.min_steps(),
                    cell.steps
                )));
            }
            if !cell.horizon.is_finite() || cell.horizon <= T::zero() {
                return Err(domain(format!("cell {i}: horizon must be positive")));
            }
            let sim = cell.simulation_steps();
            if sim == 0 || sim % cell.steps != 0 {
                return Err(domain(format!(
                    "cell {i}: sim_steps = {sim} must be a positive multiple of n = {}",
                    cell.steps
                )));
            }
        }
        Ok(())
    }
}

/// Result of a single replication.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ReplicationOutcome<T> {
    pub replication: usize,
    pub seed: u64,
    /// Raw estimate; NaN when the estimator could not produce one.
    pub estimate: T,
    pub valid: bool,
}

/// Five-number summary with quartiles by linear interpolation.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FiveNumberSummary<T> {
    pub min: T,
    pub q1: T,
    pub median: T,
    pub q3: T,
    pub max: T,
}

fn interpolated_quantile<T: Scalar>(sorted: &[T], p: f64) -> T {
    let last = sorted.len() - 1;
    let position = p * last as f64;
    let lower = position.floor() as usize;
    let upper = position.ceil() as usize;
    let weight = crate::scalar::from_f64::<T>(position - lower as f64);
    sorted[lower] + weight * (sorted[upper] - sorted[lower])
}

fn five_number_summary<T: Scalar>(sorted: &[T]) -> FiveNumberSummary<T> {
    FiveNumberSummary {
        min: sorted[0],
        q1: interpolated_quantile(sorted, 0.25),
        median: interpolated_quantile(sorted, 0.5),
        q3: interpolated_quantile(sorted, 0.75),
        max: sorted[sorted.len() - 1],
    }
}

/// Aggregated statistics of one cell.
#[derive(Debug, Clone, PartialEq)]
pub struct CellSummary<T> {
    pub cell_index: usize,
    pub cell: Cell<T>,
    /// Mean over valid replications.
    pub mean: T,
    /// Unbiased variance (divisor R − 1) over valid replications; 0 by
    /// convention when fewer than two are available.
    pub variance: T,
    /// Coefficient of variation, sd / mean.
    pub cv: T,
    pub valid_count: usize,
    pub invalid_count: usize,
    pub boxplot: FiveNumberSummary<T>,
    /// First and last replication seed of the cell's stream.
    pub seed_range: (u64, u64),
    pub wall_time_secs: f64,
    /// Set when fewer than two valid replications back the variance.
    pub low_sample: bool,
    /// Per-replication raw results, in replication order.
    pub outcomes: Vec<ReplicationOutcome<T>>,
}

/// A cell that could not produce a summary; sibling cells are unaffected.
#[derive(Debug, Clone, PartialEq)]
pub struct CellFailure {
    pub cell_index: usize,
    pub message: String,
    pub invalid_count: usize,
}

pub type CellOutcome<T> = std::result::Result<CellSummary<T>, CellFailure>;

/// Results of all cells plus the overall wall time.
#[derive(Debug, Clone)]
pub struct ExperimentSummary<T> {
    pub cells: Vec<CellOutcome<T>>,
    pub wall_time_secs: f64,
}

fn replicate<T: Scalar>(
    config: &ExperimentConfig<T>,
    cell: &Cell<T>,
    sampler: &FbmSampler<T>,
    stream_root: u64,
    replication: usize,
) -> Result<ReplicationOutcome<T>> {
    let seed = replication_seed(stream_root, replication as u64);
    let driver = sampler.sample(seed);
    let path = match config.state_floor {
        Some(floor) => simulate_with_floor(&config.model, &driver, floor)?,
        None => simulate(&config.model, &driver)?,
    };
    let stride = cell.simulation_steps() / cell.steps;
    let observed = if stride == 1 {
        path.observed()
    } else {
        let values = path.x.iter().step_by(stride).copied().collect();
        ObservedPath::from_values(values, cell.horizon)?
    };
    let result = match cell.estimator {
        EstimatorKind::Hurst => estimate_hurst(&observed),
        EstimatorKind::VolatilityKnownHurst => {
            Ok(estimate_volatility(&observed, config.model.hurst))
        }
        EstimatorKind::VolatilityPluginHurst => estimate_volatility_plugin(&observed),
        EstimatorKind::Drift => estimate_drift(&observed, config.drift_floor),
    };
    let (estimate, valid) = match result {
        Ok(r) => (r.estimate, r.valid),
        // A constant path is an invalid draw, not a broken cell.
        Err(Error::DegeneratePath) => (T::nan(), false),
        Err(err) => return Err(err),
    };
    Ok(ReplicationOutcome {
        replication,
        seed,
        estimate,
        valid,
    })
}

/// Run every replication of one cell and aggregate. Deterministic given the
/// configuration; replications execute in parallel on the current pool.
pub fn run_cell<T: Scalar>(
    config: &ExperimentConfig<T>,
    cell_index: usize,
) -> Result<CellSummary<T>> {
    config.validate()?;
    let cell = config
        .cells
        .get(cell_index)
        .copied()
        .ok_or_else(|| domain(format!("no cell with index {cell_index}")))?;
    let started = Instant::now();
    let sampler = FbmSampler::new(cell.simulation_steps(), cell.horizon, config.model.hurst)?;
    let stream_root = cell_stream_root(config.base_seed, cell_index);

    let outcomes: Vec<ReplicationOutcome<T>> = (0..config.replications)
        .into_par_iter()
        .map(|r| replicate(config, &cell, &sampler, stream_root, r))
        .collect::<Result<Vec<_>>>()?;

    let valid: Vec<T> = outcomes
        .iter()
        .filter(|o| o.valid && o.estimate.is_finite())
        .map(|o| o.estimate)
        .collect();
    let invalid_count = outcomes.len() - valid.len();
    if valid.is_empty() {
        return Err(Error::AllInvalid {
            cell_index,
            invalid_count,
        });
    }

    let count = crate::scalar::from_usize::<T>(valid.len());
    let mean = valid.iter().fold(T::zero(), |acc, v| acc + *v) / count;
    let low_sample = valid.len() < 2;
    let variance = if low_sample {
        T::zero()
    } else {
        let centered = valid.iter().fold(T::zero(), |acc, v| {
            let d = *v - mean;
            acc + d * d
        });
        centered / (count - T::one())
    };
    let cv = variance.sqrt() / mean;

    let mut sorted = valid;
    sorted.sort_by(|a, b| a.partial_cmp(b).expect("valid estimates are finite"));
    let boxplot = five_number_summary(&sorted);

    let seed_range = (
        replication_seed(stream_root, 0),
        replication_seed(stream_root, config.replications as u64 - 1),
    );
    Ok(CellSummary {
        cell_index,
        cell,
        mean,
        variance,
        cv,
        valid_count: sorted.len(),
        invalid_count,
        boxplot,
        seed_range,
        wall_time_secs: started.elapsed().as_secs_f64(),
        low_sample,
        outcomes,
    })
}

/// Run every cell; cell failures are recorded per cell and do not abort the
/// siblings. With `workers > 0` a dedicated pool of that size is used.
pub fn run_experiment<T: Scalar>(config: &ExperimentConfig<T>) -> Result<ExperimentSummary<T>> {
    config.validate()?;
    let run_all = || {
        let started = Instant::now();
        let cells = (0..config.cells.len())
            .map(|i| {
                run_cell(config, i).map_err(|err| {
                    let invalid_count = match err {
                        Error::AllInvalid { invalid_count, .. } => invalid_count,
                        _ => 0,
                    };
                    CellFailure {
                        cell_index: i,
                        message: err.to_string(),
                        invalid_count,
                    }
                })
            })
            .collect();
        ExperimentSummary {
            cells,
            wall_time_secs: started.elapsed().as_secs_f64(),
        }
    };
    if config.workers > 0 {
        let pool = rayon::ThreadPoolBuilder::new()
            .num_threads(config.workers)
            .build()
            .map_err(|e| domain(format!("failed to build worker pool: {e}")))?;
        Ok(pool.install(run_all))
    } else {
        Ok(run_all())
    }
}
