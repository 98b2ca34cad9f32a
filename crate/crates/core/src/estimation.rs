//! Quadratic-variation statistics and parameter estimators for paths
//! observed on a uniform partition of `[0, T]`.
//!
//! For observations `ξ(t_0), .., ξ(t_n)` with `t_k = kT/n`:
//!
//! * the first-order quadratic variation is `Σ_k (ξ(t_{k+1}) − ξ(t_k))²`,
//! * the second-order quadratic variation is the analogous sum of squared
//!   second differences, never more than four times the first (by the
//!   elementary `(u − v)² ≤ 2u² + 2v²` bound),
//! * the Hurst estimator is `log(4 − V22/V12) / (2 log 2)`,
//! * the volatility estimator with known `H` is `T^{−H}·sqrt(n^{2H−1}·V12)`,
//! * the drift estimator is the terminal value divided by the left-point
//!   Riemann sum of `1/max(ξ, floor)` at per-unit-time resolution `m = n/T`.
//!
//! Estimators report a raw value together with a validity flag instead of
//! clamping, so replication harnesses can count out-of-domain outcomes.

use crate::error::{domain, Error, Result};
use crate::fbm::Hurst;
use crate::scalar::{from_f64, from_usize, Scalar};
use std::collections::BTreeMap;

/// A path observed on the uniform grid `t_k = kT/n`, `k = 0..=n`.
#[derive(Debug, Clone)]
pub struct ObservedPath<T> {
    values: Vec<T>,
    horizon: T,
}

impl<T: Scalar> ObservedPath<T> {
    /// `values[k]` is the observation at `t_k = k·horizon/n` with
    /// `n = values.len() − 1 ≥ 1`.
    pub fn from_values(values: Vec<T>, horizon: T) -> Result<Self> {
        if values.len() < 2 {
            return Err(domain("an observed path needs at least two values"));
        }
        if values.iter().any(|v| !v.is_finite()) {
            return Err(domain("observed values must all be finite"));
        }
        if !horizon.is_finite() || horizon <= T::zero() {
            return Err(domain(format!("horizon must be positive, got {horizon}")));
        }
        Ok(ObservedPath { values, horizon })
    }

    pub fn values(&self) -> &[T] {
        &self.values
    }

    pub fn horizon(&self) -> T {
        self.horizon
    }

    /// Number of grid steps `n`.
    pub fn step_count(&self) -> usize {
        self.values.len() - 1
    }
}

impl<T: Scalar> crate::fbm::FbmPath<T> {
    /// View the fBm path as an observation record.
    pub fn observed(&self) -> ObservedPath<T> {
        ObservedPath::from_values(self.values.clone(), self.horizon)
            .expect("sampled paths satisfy the observation invariants")
    }
}

/// Point estimate with a validity flag and named intermediate quantities.
///
/// `valid` is false whenever a defining quantity left its admissible domain;
/// the raw estimate is still reported when it is finite.
#[derive(Debug, Clone, PartialEq)]
pub struct EstimationResult<T> {
    pub estimate: T,
    pub valid: bool,
    pub diagnostics: BTreeMap<&'static str, T>,
}

/// First-order quadratic variation `Σ_{k<n} (ξ(t_{k+1}) − ξ(t_k))²`.
pub fn quadratic_variation<T: Scalar>(path: &ObservedPath<T>) -> T {
    path.values
        .windows(2)
        .map(|w| {
            let d = w[1] - w[0];
            d * d
        })
        .fold(T::zero(), |acc, v| acc + v)
}

/// Second-order quadratic variation
/// `Σ_{k≤n−2} (ξ(t_{k+2}) − 2ξ(t_{k+1}) + ξ(t_k))²`. Needs `n ≥ 2`.
pub fn second_order_variation<T: Scalar>(path: &ObservedPath<T>) -> Result<T> {
    if path.step_count() < 2 {
        return Err(domain("second-order variation needs at least two steps"));
    }
    Ok(path
        .values
        .windows(3)
        .map(|w| {
            let d = w[2] - w[1] - (w[1] - w[0]);
            d * d
        })
        .fold(T::zero(), |acc, v| acc + v))
}

/// Hurst-index estimator `log(4 − V22/V12) / (2 log 2)`.
///
/// The result is `valid` only when the log argument lies in `(1, 2)`, i.e.
/// the estimate lands in `(0, ½)`; a nonpositive argument yields a NaN
/// estimate. An exactly constant path (zero quadratic variation) is an
/// error, not a result.
pub fn estimate_hurst<T: Scalar>(path: &ObservedPath<T>) -> Result<EstimationResult<T>> {
    let v12 = quadratic_variation(path);
    let v22 = second_order_variation(path)?;
    if v12 <= T::zero() {
        return Err(Error::DegeneratePath);
    }
    let ratio = v22 / v12;
    let four = from_f64::<T>(4.0);
    let two = from_f64::<T>(2.0);
    let argument = four - ratio;
    let (estimate, valid) = if argument > T::zero() {
        let estimate = argument.ln() / (two * T::LN_2());
        (estimate, argument > T::one() && argument < two)
    } else {
        (T::nan(), false)
    };
    let mut diagnostics = BTreeMap::new();
    diagnostics.insert("v12", v12);
    diagnostics.insert("v22", v22);
    diagnostics.insert("ratio", ratio);
    diagnostics.insert("log_argument", argument);
    Ok(EstimationResult {
        estimate,
        valid,
        diagnostics,
    })
}

fn volatility_from_variation<T: Scalar>(path: &ObservedPath<T>, hurst_value: T, v12: T) -> T {
    let n = from_usize::<T>(path.step_count());
    let two = from_f64::<T>(2.0);
    let scaled = n.powf(two * hurst_value - T::one()) * v12;
    scaled.sqrt() / path.horizon().powf(hurst_value)
}

/// Volatility estimator `T^{−H}·sqrt(n^{2H−1}·V12)` with known Hurst index.
///
/// A zero quadratic variation gives estimate `0` with `valid = false`.
pub fn estimate_volatility<T: Scalar>(
    path: &ObservedPath<T>,
    hurst: Hurst<T>,
) -> EstimationResult<T> {
    let v12 = quadratic_variation(path);
    let estimate = volatility_from_variation(path, hurst.value(), v12);
    let mut diagnostics = BTreeMap::new();
    diagnostics.insert("v12", v12);
    EstimationResult {
        estimate,
        valid: v12 > T::zero(),
        diagnostics,
    }
}

/// Volatility estimator with the Hurst index itself estimated from the path
/// and plugged in. Valid only when both stages are valid; diagnostics carry
/// the intermediate quantities of both.
pub fn estimate_volatility_plugin<T: Scalar>(
    path: &ObservedPath<T>,
) -> Result<EstimationResult<T>> {
    let hurst_stage = estimate_hurst(path)?;
    let v12 = hurst_stage.diagnostics["v12"];
    let (estimate, valid) = if hurst_stage.estimate.is_finite() {
        let sigma = volatility_from_variation(path, hurst_stage.estimate, v12);
        (sigma, hurst_stage.valid && v12 > T::zero())
    } else {
        (T::nan(), false)
    };
    let mut diagnostics = hurst_stage.diagnostics;
    diagnostics.insert("hurst_estimate", hurst_stage.estimate);
    Ok(EstimationResult {
        estimate,
        valid,
        diagnostics,
    })
}

/// Drift estimator: terminal value over the left-point Riemann sum
/// `(1/m)·Σ_{i<⌈Tm⌉} 1/max(ξ(i/m), floor)` with per-unit-time resolution
/// `m = n/T`; on this grid `⌈Tm⌉ = n`.
pub fn estimate_drift<T: Scalar>(path: &ObservedPath<T>, floor: T) -> Result<EstimationResult<T>> {
    if !floor.is_finite() || floor <= T::zero() {
        return Err(domain(format!(
            "floor must be finite and positive, got {floor}"
        )));
    }
    let n = path.step_count();
    let mut sum = T::zero();
    for value in &path.values[..n] {
        sum += value.max(floor).recip();
    }
    // 1/m = T/n
    let integral_sum = sum * path.horizon() / from_usize::<T>(n);
    let terminal = path.values[n];
    let estimate = terminal / integral_sum;
    let mut diagnostics = BTreeMap::new();
    diagnostics.insert("integral_sum", integral_sum);
    diagnostics.insert("terminal_value", terminal);
    Ok(EstimationResult {
        estimate,
        valid: integral_sum > T::zero() && estimate.is_finite(),
        diagnostics,
    })
}
