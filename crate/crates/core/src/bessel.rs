//! Euler simulation of the regularized Bessel-type SDE
//!
//! ```text
//! X(t) = x0 + ∫₀ᵗ a / (X(s)·1{X(s)>0} + ε) ds + σ B^H(t)
//! ```
//!
//! with `x0, a, σ, ε > 0`. The integrand is also accumulated separately as
//! the functional `L(t) = ∫₀ᵗ ds / (X·1{X>0} + ε)`, so every simulated path
//! satisfies the decomposition `X = x0 + a·L + σ·B` up to rounding. Both `X`
//! and `L` use the same left-point (explicit Euler) rule.
//!
//! Shared-noise utilities expose the structure of the ε-limit: simulating a
//! descending ε ladder against one driver makes the pointwise ordering
//! `X_{ε'} ≥ X_ε` for `ε' < ε` and the shrinking sup-norm gaps observable,
//! and [`boundedness_diagnostic`] checks the a-priori path bound
//! `|X(t)| < x0 + aT·max(2/x0, 1) + σ·T^λ·Λ` with an empirical Hölder
//! constant standing in for `Λ`.

use crate::error::{domain, Result};
use crate::estimation::ObservedPath;
use crate::fbm::{FbmPath, Hurst};
use crate::scalar::{from_f64, from_usize, Scalar};

/// Parameters of the regularized SDE.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ModelParams<T> {
    /// Initial value `x0 > 0`.
    pub x0: T,
    /// Drift coefficient `a > 0` in `a / (x·1{x>0} + ε)`.
    pub drift: T,
    /// Noise coefficient `σ > 0`.
    pub sigma: T,
    pub hurst: Hurst<T>,
    /// Regularization `ε > 0` of the drift denominator.
    pub epsilon: T,
}

impl<T: Scalar> ModelParams<T> {
    pub fn new(x0: T, drift: T, sigma: T, hurst: Hurst<T>, epsilon: T) -> Result<Self> {
        for (name, v) in [
            ("x0", x0),
            ("a", drift),
            ("sigma", sigma),
            ("epsilon", epsilon),
        ] {
            if !v.is_finite() || v <= T::zero() {
                return Err(domain(format!(
                    "{name} must be finite and positive, got {v}"
                )));
            }
        }
        Ok(ModelParams {
            x0,
            drift,
            sigma,
            hurst,
            epsilon,
        })
    }

    /// Same parameters with a different regularization, for ε ladders.
    pub fn with_epsilon(mut self, epsilon: T) -> Result<Self> {
        if !epsilon.is_finite() || epsilon <= T::zero() {
            return Err(domain(format!(
                "epsilon must be finite and positive, got {epsilon}"
            )));
        }
        self.epsilon = epsilon;
        Ok(self)
    }
}

/// A simulated path of the regularized process on a uniform grid.
#[derive(Debug, Clone)]
pub struct BesselPath<T> {
    /// Grid times `t_k = k·T/n`.
    pub times: Vec<T>,
    /// Process values; `x[0] = x0`.
    pub x: Vec<T>,
    /// Accumulated integral functional; `l[0] = 0`, non-decreasing.
    pub l: Vec<T>,
    pub params: ModelParams<T>,
    /// The driving fBm path, retained for coupling checks.
    pub driver: FbmPath<T>,
}

impl<T: Scalar> BesselPath<T> {
    pub fn step_count(&self) -> usize {
        self.x.len() - 1
    }

    pub fn horizon(&self) -> T {
        self.driver.horizon
    }

    /// Process values as an observation record for the estimators.
    pub fn observed(&self) -> ObservedPath<T> {
        ObservedPath::from_values(self.x.clone(), self.horizon())
            .expect("simulated paths satisfy the observation invariants")
    }
}

/// One explicit Euler step.
///
/// Returns `(x_next, dl)` with `dl = dt / (x·1{x>0} + ε)` and
/// `x_next = x + a·dl + σ·noise_increment`. The positive-part indicator is
/// evaluated with strict inequality, exactly as in the drift denominator.
pub fn euler_step<T: Scalar>(
    x: T,
    noise_increment: T,
    params: &ModelParams<T>,
    dt: T,
) -> Result<(T, T)> {
    if !x.is_finite() || !noise_increment.is_finite() || !dt.is_finite() || dt <= T::zero() {
        return Err(domain(format!(
            "euler step needs finite inputs and dt > 0, got x = {x}, dB = {noise_increment}, dt = {dt}"
        )));
    }
    Ok(euler_step_unchecked(x, noise_increment, params, dt))
}

#[inline]
fn euler_step_unchecked<T: Scalar>(
    x: T,
    noise_increment: T,
    params: &ModelParams<T>,
    dt: T,
) -> (T, T) {
    let positive_part = if x > T::zero() { x } else { T::zero() };
    let dl = dt / (positive_part + params.epsilon);
    let x_next = x + params.drift * dl + params.sigma * noise_increment;
    (x_next, dl)
}

/// Simulate the regularized process against `driver` with the explicit Euler
/// scheme on the driver's grid.
pub fn simulate<T: Scalar>(params: &ModelParams<T>, driver: &FbmPath<T>) -> Result<BesselPath<T>> {
    let steps = driver.step_count();
    let dt = driver.step();
    let mut x = Vec::with_capacity(steps + 1);
    let mut l = Vec::with_capacity(steps + 1);
    x.push(params.x0);
    l.push(T::zero());
    let mut current = params.x0;
    let mut accumulated = T::zero();
    for k in 0..steps {
        let (next, dl) = euler_step_unchecked(current, driver.increment(k), params, dt);
        if !next.is_finite() {
            return Err(domain(format!("state became non-finite at step {k}")));
        }
        accumulated += dl;
        current = next;
        x.push(current);
        l.push(accumulated);
    }
    Ok(BesselPath {
        times: driver.times.clone(),
        x,
        l,
        params: *params,
        driver: driver.clone(),
    })
}

/// [`simulate`] with the state clamped from below at `floor` after every
/// step.
///
/// This is the guarded scheme of the table-reproduction protocol: the same
/// floor the drift estimator applies inside its reciprocal sum keeps the
/// simulated state out of the region where the regularized drift `a/ε`
/// dwarfs the step size. `l` still accumulates the unclamped drift
/// increments, so the decomposition identity `x = x0 + a·l + σ·B` holds only
/// while the clamp is inactive.
pub fn simulate_with_floor<T: Scalar>(
    params: &ModelParams<T>,
    driver: &FbmPath<T>,
    floor: T,
) -> Result<BesselPath<T>> {
    if !floor.is_finite() || floor <= T::zero() {
        return Err(domain(format!(
            "state floor must be finite and positive, got {floor}"
        )));
    }
    let steps = driver.step_count();
    let dt = driver.step();
    let mut x = Vec::with_capacity(steps + 1);
    let mut l = Vec::with_capacity(steps + 1);
    x.push(params.x0);
    l.push(T::zero());
    let mut current = params.x0;
    let mut accumulated = T::zero();
    for k in 0..steps {
        let (next, dl) = euler_step_unchecked(current, driver.increment(k), params, dt);
        if !next.is_finite() {
            return Err(domain(format!("state became non-finite at step {k}")));
        }
        accumulated += dl;
        current = next.max(floor);
        x.push(current);
        l.push(accumulated);
    }
    Ok(BesselPath {
        times: driver.times.clone(),
        x,
        l,
        params: *params,
        driver: driver.clone(),
    })
}

/// A node where the ε ordering failed beyond the rounding allowance.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OrderingViolation<T> {
    /// Index of the coarser-ε path in the ladder (compared against index + 1).
    pub ladder_index: usize,
    /// Grid node where the ordering failed.
    pub node: usize,
    /// How far below the coarser path the finer path fell.
    pub deficit: T,
}

/// Paths of a descending ε ladder, all driven by the same noise.
#[derive(Debug, Clone)]
pub struct EpsilonLadder<T> {
    /// One path per ε, in the given (descending) order.
    pub paths: Vec<BesselPath<T>>,
    /// Ladder ordering is expected to hold exactly; failures are recorded
    /// here rather than silently tolerated.
    pub violations: Vec<OrderingViolation<T>>,
}

impl<T: Scalar> EpsilonLadder<T> {
    /// Sup-norm gaps between consecutive ladder paths.
    pub fn sup_gaps(&self) -> Vec<T> {
        self.paths
            .windows(2)
            .map(|pair| {
                pair[0]
                    .x
                    .iter()
                    .zip(pair[1].x.iter())
                    .map(|(coarse, fine)| (*fine - *coarse).abs())
                    .fold(T::zero(), |acc, v| if v > acc { v } else { acc })
            })
            .collect()
    }
}

/// Simulate one path per ε in `epsilons` (strictly decreasing, all positive)
/// against the shared `driver`, recording any pointwise ordering violations
/// beyond `tol = 1e−12·(1 + |x|)`.
pub fn simulate_epsilon_ladder<T: Scalar>(
    params_base: &ModelParams<T>,
    epsilons: &[T],
    driver: &FbmPath<T>,
) -> Result<EpsilonLadder<T>> {
    if epsilons.is_empty() {
        return Err(domain("epsilon ladder must not be empty"));
    }
    for pair in epsilons.windows(2) {
        if pair[1] >= pair[0] {
            return Err(domain("epsilon ladder must be strictly decreasing"));
        }
    }
    let mut paths = Vec::with_capacity(epsilons.len());
    for &epsilon in epsilons {
        let params = params_base.with_epsilon(epsilon)?;
        paths.push(simulate(&params, driver)?);
    }
    let tol_unit = from_f64::<T>(1e-12);
    let mut violations = Vec::new();
    for (idx, pair) in paths.windows(2).enumerate() {
        for (node, (coarse, fine)) in pair[0].x.iter().zip(pair[1].x.iter()).enumerate() {
            let tol = tol_unit * (T::one() + coarse.abs());
            if *fine < *coarse - tol {
                violations.push(OrderingViolation {
                    ladder_index: idx,
                    node,
                    deficit: *coarse - *fine,
                });
            }
        }
    }
    Ok(EpsilonLadder { paths, violations })
}

/// Empirical Hölder constant `max |B(t_j) − B(t_i)| / (t_j − t_i)^λ` of the
/// driver, over all pairs of a coarsened grid (every `⌈n/1000⌉`-th node plus
/// the endpoint).
pub fn empirical_holder_constant<T: Scalar>(driver: &FbmPath<T>, lambda: T) -> T {
    let n = driver.step_count();
    let stride = n.div_ceil(1000).max(1);
    let mut nodes: Vec<usize> = (0..=n).step_by(stride).collect();
    if *nodes.last().unwrap() != n {
        nodes.push(n);
    }
    let mut best = T::zero();
    for (a, &i) in nodes.iter().enumerate() {
        for &j in &nodes[a + 1..] {
            let gap = driver.times[j] - driver.times[i];
            let ratio = (driver.values[j] - driver.values[i]).abs() / gap.powf(lambda);
            if ratio > best {
                best = ratio;
            }
        }
    }
    best
}

/// Check the a-priori bound `max |x| < x0 + aT·max(2/x0, 1) + σ·T^λ·Λ` with
/// the given Hölder exponent `λ ∈ (0, H)` and constant `Λ`.
pub fn boundedness_diagnostic<T: Scalar>(
    path: &BesselPath<T>,
    lambda: T,
    holder_constant: T,
) -> Result<bool> {
    let hurst = path.params.hurst.value();
    if !(lambda > T::zero() && lambda < hurst) {
        return Err(domain(format!(
            "lambda must lie in (0, H) = (0, {hurst}), got {lambda}"
        )));
    }
    if !holder_constant.is_finite() || holder_constant < T::zero() {
        return Err(domain(format!(
            "Hölder constant must be finite and nonnegative, got {holder_constant}"
        )));
    }
    let params = &path.params;
    let horizon = path.horizon();
    let two = from_f64::<T>(2.0);
    let drift_factor = (two / params.x0).max(T::one());
    let bound = params.x0
        + params.drift * horizon * drift_factor
        + params.sigma * horizon.powf(lambda) * holder_constant;
    let max_abs = path.x.iter().fold(T::zero(), |acc, v| {
        let a = v.abs();
        if a > acc {
            a
        } else {
            acc
        }
    });
    Ok(max_abs < bound)
}

/// [`boundedness_diagnostic`] with the default exponent `λ = H/2` and the
/// driver's own coarsened-grid Hölder constant.
pub fn boundedness_check<T: Scalar>(path: &BesselPath<T>) -> Result<bool> {
    let lambda = path.params.hurst.value() / from_f64::<T>(2.0);
    let holder = empirical_holder_constant(&path.driver, lambda);
    boundedness_diagnostic(path, lambda, holder)
}

/// Constant-zero driver on the grid `t_k = k·T/n`, for deterministic oracles.
pub fn zero_driver<T: Scalar>(steps: usize, horizon: T, hurst: Hurst<T>) -> Result<FbmPath<T>> {
    if steps == 0 {
        return Err(domain("driver needs at least one step"));
    }
    if !horizon.is_finite() || horizon <= T::zero() {
        return Err(domain(format!("horizon must be positive, got {horizon}")));
    }
    let n = from_usize::<T>(steps);
    let times = (0..=steps)
        .map(|k| from_usize::<T>(k) * horizon / n)
        .collect();
    Ok(FbmPath {
        times,
        values: vec![T::zero(); steps + 1],
        horizon,
        hurst,
    })
}
