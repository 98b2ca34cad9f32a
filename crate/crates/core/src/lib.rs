//! Simulation and statistical estimation for Bessel-type processes driven by
//! fractional Brownian motion with Hurst index below one half.
//!
//! The crate has four layers:
//!
//! * [`fbm`] — exact-covariance sampling of fractional Gaussian noise and
//!   fractional Brownian motion on uniform grids, plus the covariance
//!   formulas the samplers and their tests are checked against.
//! * [`bessel`] — an explicit Euler scheme for the regularized SDE
//!   `X(t) = x0 + ∫ a / (X·1{X>0} + ε) ds + σ B^H(t)`, tracking the
//!   accumulated integral functional `L`, together with ε-coupling and
//!   path-diagnostic utilities.
//! * [`estimation`] — quadratic-variation statistics and the estimators of
//!   the Hurst index, the volatility coefficient (known or plugged-in `H`),
//!   and the drift coefficient.
//! * [`experiment`] — a deterministic, seed-split Monte Carlo harness that
//!   runs replicated simulate-then-estimate cells and aggregates
//!   mean/variance/CV and boxplot summaries.
//!
//! All numeric code is generic over the scalar type through the [`Scalar`]
//! trait (`f32` or `f64`); the aliases below fix the `f64` instantiations
//! used by the command-line front end.

pub mod bessel;
pub mod error;
pub mod estimation;
pub mod experiment;
pub mod fbm;
pub mod scalar;
pub mod seed;

pub use error::{Error, Result};
pub use scalar::Scalar;

/// `f64` instantiations of the core types, the precision used by the CLI and
/// the bundled experiment configurations.
pub type Hurst64 = fbm::Hurst<f64>;
pub type FgnSample64 = fbm::FgnSample<f64>;
pub type FbmPath64 = fbm::FbmPath<f64>;
pub type ModelParams64 = bessel::ModelParams<f64>;
pub type BesselPath64 = bessel::BesselPath<f64>;
pub type ObservedPath64 = estimation::ObservedPath<f64>;
pub type EstimationResult64 = estimation::EstimationResult<f64>;
pub type ExperimentConfig64 = experiment::ExperimentConfig<f64>;
pub type ExperimentSummary64 = experiment::ExperimentSummary<f64>;
