//! Fractional Gaussian noise and fractional Brownian motion on uniform grids.
//!
//! Fractional Brownian motion `B^H` is the centered Gaussian process with
//! covariance `½(t^{2H} + s^{2H} − |t−s|^{2H})`. Its unit-spacing increment
//! sequence (fractional Gaussian noise) is stationary with autocovariance
//!
//! ```text
//! γ(k) = ½((k+1)^{2H} − 2k^{2H} + |k−1|^{2H}),   γ(0) = 1.
//! ```
//!
//! Three exact samplers are provided:
//!
//! * circulant embedding (FFT, `O(n log n)`) — the default; the embedding
//!   spectrum is nonnegative in practice for fGn across `H ∈ (0, 1)`,
//! * Cholesky factorization of the covariance matrix (`O(n³)` setup,
//!   `O(n²)` per sample, capped by default to avoid accidental blowup),
//! * the Hosking recursion (`O(n²)` streaming), kept as a validation
//!   alternative.
//!
//! Sampling is a pure function of `(n, H, seed, method)`: the same inputs
//! produce bit-identical output.

use crate::error::{domain, Error, Result};
use crate::scalar::{from_f64, from_usize, Scalar};
use rand::SeedableRng;
use rand_chacha::ChaCha12Rng;
use rustfft::{num_complex::Complex, Fft, FftPlanner};
use std::sync::Arc;

/// Relative spectrum tolerance for circulant embedding: eigenvalues in
/// `[-tol·max_eig, 0)` are clamped to zero, anything below triggers the
/// configured fallback.
const SPECTRUM_TOLERANCE: f64 = 1e-9;

/// Default cap on the covariance-matrix methods (`O(n²)` memory / `O(n³)` setup).
pub const DEFAULT_DENSE_CAP: usize = 8192;

/// Hurst index, constrained to the open interval `(0, 1)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Hurst<T>(T);

impl<T: Scalar> Hurst<T> {
    pub fn new(value: T) -> Result<Self> {
        if !value.is_finite() || value <= T::zero() || value >= T::one() {
            return Err(domain(format!(
                "Hurst index must lie in (0, 1), got {value}"
            )));
        }
        Ok(Hurst(value))
    }

    pub fn value(self) -> T {
        self.0
    }

    /// `2H`, the exponent the covariance formulas are written in.
    fn doubled(self) -> T {
        self.0 + self.0
    }
}

/// Covariance `E[B^H(s) B^H(t)] = ½(t^{2H} + s^{2H} − |t−s|^{2H})`.
pub fn fbm_covariance<T: Scalar>(s: T, t: T, hurst: Hurst<T>) -> Result<T> {
    if !s.is_finite() || !t.is_finite() || s < T::zero() || t < T::zero() {
        return Err(domain(format!(
            "times must be finite and nonnegative, got ({s}, {t})"
        )));
    }
    let two_h = hurst.doubled();
    let half = from_f64::<T>(0.5);
    Ok(half * (t.powf(two_h) + s.powf(two_h) - (t - s).abs().powf(two_h)))
}

/// Autocovariance of unit-spacing fractional Gaussian noise at integer `lag`.
///
/// For `lag ≥ 2` the second difference of `k ↦ k^{2H}` is evaluated in the
/// factored form `½ k^{2H} (expm1(2H·ln1p(1/k)) + expm1(2H·ln1p(−1/k)))`,
/// which avoids the catastrophic cancellation of the textbook expression for
/// large lags.
pub fn fgn_autocovariance<T: Scalar>(lag: usize, hurst: Hurst<T>) -> T {
    if lag == 0 {
        return T::one();
    }
    let half = from_f64::<T>(0.5);
    if hurst.value() == half {
        // Brownian case: increments are independent.
        return T::zero();
    }
    let two_h = hurst.doubled();
    let two = from_f64::<T>(2.0);
    if lag == 1 {
        // ½(2^{2H} − 2) = 2^{2H−1} − 1
        return two.powf(two_h - T::one()) - T::one();
    }
    let k = from_usize::<T>(lag);
    let inv = k.recip();
    let up = (two_h * inv.ln_1p()).exp_m1();
    let down = (two_h * (-inv).ln_1p()).exp_m1();
    half * k.powf(two_h) * (up + down)
}

/// Generation method for fractional Gaussian noise.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FgnMethod {
    CirculantEmbedding,
    Cholesky,
    Hosking,
}

/// Options controlling method selection edge cases.
#[derive(Debug, Clone, Copy)]
pub struct FgnSamplerOptions {
    /// Fall back to Cholesky when the embedding spectrum is materially
    /// negative (never observed for fGn, but the policy is explicit).
    pub fallback_to_cholesky: bool,
    /// Size cap for the Cholesky method.
    pub dense_cap: usize,
}

impl Default for FgnSamplerOptions {
    fn default() -> Self {
        FgnSamplerOptions {
            fallback_to_cholesky: true,
            dense_cap: DEFAULT_DENSE_CAP,
        }
    }
}

/// A sampled block of unit-spacing fractional Gaussian noise.
#[derive(Debug, Clone)]
pub struct FgnSample<T> {
    /// Zero-mean jointly Gaussian values with covariance `γ(|i−j|)`.
    pub increments: Vec<T>,
    pub hurst: Hurst<T>,
    pub seed: u64,
    /// Method that actually produced the sample (fallbacks are observable).
    pub method: FgnMethod,
}

enum MethodState<T: Scalar> {
    Circulant {
        /// `sqrt(λ_j / M)` for `j = 0..=M/2`; the spectrum is symmetric.
        scaled_spectrum: Vec<T>,
        fft: Arc<dyn Fft<T>>,
    },
    Cholesky {
        /// Row-major packed lower-triangular factor of `[γ(|i−j|)]`.
        factor: Vec<T>,
    },
    Hosking {
        autocov: Vec<T>,
    },
}

/// Prepared fGn sampler: method state (embedding spectrum, Cholesky factor,
/// or autocovariances) is computed once and can be reused across seeds and
/// threads.
pub struct FgnSampler<T: Scalar> {
    len: usize,
    hurst: Hurst<T>,
    method: FgnMethod,
    state: MethodState<T>,
}

impl<T: Scalar> FgnSampler<T> {
    pub fn new(len: usize, hurst: Hurst<T>, method: FgnMethod) -> Result<Self> {
        Self::with_options(len, hurst, method, FgnSamplerOptions::default())
    }

    pub fn with_options(
        len: usize,
        hurst: Hurst<T>,
        method: FgnMethod,
        options: FgnSamplerOptions,
    ) -> Result<Self> {
        if len == 0 {
            return Err(domain("fGn sample length must be at least 1"));
        }
        match method {
            FgnMethod::CirculantEmbedding => match Self::build_circulant(len, hurst) {
                Ok(state) => Ok(Self::assemble(
                    len,
                    hurst,
                    FgnMethod::CirculantEmbedding,
                    state,
                )),
                Err(err @ Error::EmbeddingFailed { .. }) => {
                    if options.fallback_to_cholesky {
                        let state = Self::build_cholesky(len, hurst, options.dense_cap)?;
                        Ok(Self::assemble(len, hurst, FgnMethod::Cholesky, state))
                    } else {
                        Err(err)
                    }
                }
                Err(err) => Err(err),
            },
            FgnMethod::Cholesky => {
                let state = Self::build_cholesky(len, hurst, options.dense_cap)?;
                Ok(Self::assemble(len, hurst, FgnMethod::Cholesky, state))
            }
            FgnMethod::Hosking => {
                let autocov = (0..len).map(|k| fgn_autocovariance(k, hurst)).collect();
                Ok(Self::assemble(
                    len,
                    hurst,
                    FgnMethod::Hosking,
                    MethodState::Hosking { autocov },
                ))
            }
        }
    }

    fn assemble(len: usize, hurst: Hurst<T>, method: FgnMethod, state: MethodState<T>) -> Self {
        FgnSampler {
            len,
            hurst,
            method,
            state,
        }
    }

    /// Number of increments per sample; at least 1 by construction.
    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    pub fn hurst(&self) -> Hurst<T> {
        self.hurst
    }

    /// Method actually in use (may differ from the requested one after a
    /// fallback).
    pub fn method(&self) -> FgnMethod {
        self.method
    }

    fn build_circulant(len: usize, hurst: Hurst<T>) -> Result<MethodState<T>> {
        // Embed the (len × len) Toeplitz covariance into a circulant of size
        // M = next_pow2(2(len−1)) ≥ 2; padding to a power of two is the same
        // as embedding a longer fGn block, so exactness is preserved.
        let half = len.max(2) - 1;
        let m = (2 * half).next_power_of_two();
        let mut row: Vec<Complex<T>> = Vec::with_capacity(m);
        for j in 0..=m / 2 {
            row.push(Complex::new(fgn_autocovariance(j, hurst), T::zero()));
        }
        for j in m / 2 + 1..m {
            let mirrored = row[m - j].re;
            row.push(Complex::new(mirrored, T::zero()));
        }

        let mut planner = FftPlanner::new();
        let fft = planner.plan_fft_forward(m);
        let mut scratch = vec![Complex::new(T::zero(), T::zero()); fft.get_inplace_scratch_len()];
        fft.process_with_scratch(&mut row, &mut scratch);

        let max_eig = row
            .iter()
            .map(|c| c.re)
            .fold(T::zero(), |acc, v| if v > acc { v } else { acc });
        let tolerance = from_f64::<T>(SPECTRUM_TOLERANCE) * max_eig;
        let mut min_eig = T::infinity();
        for c in &row {
            if c.re < min_eig {
                min_eig = c.re;
            }
        }
        if min_eig < -tolerance {
            return Err(Error::EmbeddingFailed {
                min_eigenvalue: min_eig.to_f64().unwrap_or(f64::NEG_INFINITY),
                tolerance: tolerance.to_f64().unwrap_or(0.0),
            });
        }

        let inv_m = from_usize::<T>(m).recip();
        let scaled_spectrum: Vec<T> = row[..=m / 2]
            .iter()
            .map(|c| {
                let lambda = if c.re < T::zero() { T::zero() } else { c.re };
                (lambda * inv_m).sqrt()
            })
            .collect();

        Ok(MethodState::Circulant {
            scaled_spectrum,
            fft,
        })
    }

    fn build_cholesky(len: usize, hurst: Hurst<T>, cap: usize) -> Result<MethodState<T>> {
        if len > cap {
            return Err(Error::MethodUnavailable(format!(
                "Cholesky sampling requested for n = {len}, above the cap of {cap}"
            )));
        }
        let autocov: Vec<T> = (0..len).map(|k| fgn_autocovariance(k, hurst)).collect();
        let mut factor = vec![T::zero(); len * (len + 1) / 2];
        for i in 0..len {
            let row_i = i * (i + 1) / 2;
            for j in 0..=i {
                let row_j = j * (j + 1) / 2;
                let mut acc = autocov[i - j];
                let (left, right) = (&factor[row_i..row_i + j], &factor[row_j..row_j + j]);
                for (a, b) in left.iter().zip(right.iter()) {
                    acc -= *a * *b;
                }
                if i == j {
                    if acc <= T::zero() {
                        return Err(Error::NotPositiveDefinite(i));
                    }
                    factor[row_i + j] = acc.sqrt();
                } else {
                    factor[row_i + j] = acc / factor[row_j + j];
                }
            }
        }
        Ok(MethodState::Cholesky { factor })
    }

    /// Draw one sample. Deterministic given the sampler configuration and
    /// `seed`; safe to call concurrently.
    pub fn sample(&self, seed: u64) -> FgnSample<T> {
        let mut rng = ChaCha12Rng::seed_from_u64(seed);
        let increments = match &self.state {
            MethodState::Circulant {
                scaled_spectrum,
                fft,
            } => self.sample_circulant(scaled_spectrum, fft, &mut rng),
            MethodState::Cholesky { factor } => self.sample_cholesky(factor, &mut rng),
            MethodState::Hosking { autocov } => self.sample_hosking(autocov, &mut rng),
        };
        FgnSample {
            increments,
            hurst: self.hurst,
            seed,
            method: self.method,
        }
    }

    fn sample_circulant(
        &self,
        scaled_spectrum: &[T],
        fft: &Arc<dyn Fft<T>>,
        rng: &mut ChaCha12Rng,
    ) -> Vec<T> {
        let m = fft.len();
        let half = m / 2;
        let zero = T::zero();
        let mut buf = vec![Complex::new(zero, zero); m];
        let root_half = from_f64::<T>(std::f64::consts::FRAC_1_SQRT_2);
        // Normal draws are consumed in frequency order 0, 1, .., M/2 (two
        // per interior frequency), which pins the output for a given seed.
        buf[0] = Complex::new(scaled_spectrum[0] * T::standard_normal(rng), zero);
        for j in 1..half {
            let amp = scaled_spectrum[j] * root_half;
            let re = amp * T::standard_normal(rng);
            let im = amp * T::standard_normal(rng);
            buf[j] = Complex::new(re, im);
            buf[m - j] = Complex::new(re, -im);
        }
        buf[half] = Complex::new(scaled_spectrum[half] * T::standard_normal(rng), zero);

        let mut scratch = vec![Complex::new(zero, zero); fft.get_inplace_scratch_len()];
        fft.process_with_scratch(&mut buf, &mut scratch);
        buf[..self.len].iter().map(|c| c.re).collect()
    }

    fn sample_cholesky(&self, factor: &[T], rng: &mut ChaCha12Rng) -> Vec<T> {
        let n = self.len;
        let draws: Vec<T> = (0..n).map(|_| T::standard_normal(rng)).collect();
        let mut out = Vec::with_capacity(n);
        for i in 0..n {
            let row = i * (i + 1) / 2;
            let mut acc = T::zero();
            for (a, g) in factor[row..=row + i].iter().zip(draws.iter()) {
                acc += *a * *g;
            }
            out.push(acc);
        }
        out
    }

    fn sample_hosking(&self, autocov: &[T], rng: &mut ChaCha12Rng) -> Vec<T> {
        let n = self.len;
        let mut out = Vec::with_capacity(n);
        out.push(T::standard_normal(rng)); // γ(0) = 1
        let mut phi: Vec<T> = Vec::with_capacity(n);
        let mut prev: Vec<T> = Vec::with_capacity(n);
        let mut variance = T::one();
        for i in 1..n {
            let mut reflection = autocov[i];
            for (k, coef) in phi.iter().enumerate() {
                reflection -= *coef * autocov[i - 1 - k];
            }
            reflection /= variance;
            prev.clear();
            prev.extend_from_slice(&phi);
            for k in 0..i - 1 {
                phi[k] = prev[k] - reflection * prev[i - 2 - k];
            }
            phi.push(reflection);
            variance *= T::one() - reflection * reflection;
            let mut mean = T::zero();
            for (k, coef) in phi.iter().enumerate() {
                mean += *coef * out[i - 1 - k];
            }
            out.push(mean + variance.sqrt() * T::standard_normal(rng));
        }
        out
    }
}

/// One-shot fGn sample with default options.
pub fn sample_fgn<T: Scalar>(
    len: usize,
    hurst: Hurst<T>,
    seed: u64,
    method: FgnMethod,
) -> Result<FgnSample<T>> {
    Ok(FgnSampler::new(len, hurst, method)?.sample(seed))
}

/// Fractional Brownian motion path on the uniform grid `t_k = k·T/n`.
#[derive(Debug, Clone)]
pub struct FbmPath<T> {
    /// Grid times `0, T/n, 2T/n, .., T`.
    pub times: Vec<T>,
    /// Path values; `values[0] = 0` exactly.
    pub values: Vec<T>,
    pub horizon: T,
    pub hurst: Hurst<T>,
}

impl<T: Scalar> FbmPath<T> {
    /// Number of grid steps `n`.
    pub fn step_count(&self) -> usize {
        self.values.len() - 1
    }

    pub fn step(&self) -> T {
        self.horizon / from_usize::<T>(self.step_count())
    }

    /// Increment `values[k+1] − values[k]`.
    pub fn increment(&self, k: usize) -> T {
        self.values[k + 1] - self.values[k]
    }
}

/// Prepared fBm sampler over a fixed grid: scales a unit-spacing fGn block
/// by `(T/n)^H` (self-similarity) and accumulates it.
pub struct FbmSampler<T: Scalar> {
    fgn: FgnSampler<T>,
    horizon: T,
    times: Vec<T>,
    scale: T,
}

impl<T: Scalar> FbmSampler<T> {
    pub fn new(steps: usize, horizon: T, hurst: Hurst<T>) -> Result<Self> {
        Self::with_method(steps, horizon, hurst, FgnMethod::CirculantEmbedding)
    }

    pub fn with_method(
        steps: usize,
        horizon: T,
        hurst: Hurst<T>,
        method: FgnMethod,
    ) -> Result<Self> {
        if !horizon.is_finite() || horizon <= T::zero() {
            return Err(domain(format!("horizon must be positive, got {horizon}")));
        }
        let fgn = FgnSampler::new(steps, hurst, method)?;
        let n = from_usize::<T>(steps);
        let times = (0..=steps)
            .map(|k| from_usize::<T>(k) * horizon / n)
            .collect();
        let scale = (horizon / n).powf(hurst.value());
        Ok(FbmSampler {
            fgn,
            horizon,
            times,
            scale,
        })
    }

    pub fn step_count(&self) -> usize {
        self.fgn.len()
    }

    pub fn sample(&self, seed: u64) -> FbmPath<T> {
        let fgn = self.fgn.sample(seed);
        let mut values = Vec::with_capacity(fgn.increments.len() + 1);
        let mut running = T::zero();
        values.push(T::zero());
        for inc in &fgn.increments {
            running += *inc;
            values.push(self.scale * running);
        }
        FbmPath {
            times: self.times.clone(),
            values,
            horizon: self.horizon,
            hurst: self.fgn.hurst(),
        }
    }
}

/// One-shot fBm path via circulant embedding.
pub fn sample_fbm<T: Scalar>(
    steps: usize,
    horizon: T,
    hurst: Hurst<T>,
    seed: u64,
) -> Result<FbmPath<T>> {
    Ok(FbmSampler::new(steps, horizon, hurst)?.sample(seed))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn h64(v: f64) -> Hurst<f64> {
        Hurst::new(v).unwrap()
    }

    #[test]
    fn hurst_domain_is_validated() {
        assert!(Hurst::new(0.0).is_err());
        assert!(Hurst::new(1.0).is_err());
        assert!(Hurst::new(-0.3).is_err());
        assert!(Hurst::new(f64::NAN).is_err());
        assert!(Hurst::new(0.5).is_ok());
    }

    #[test]
    fn covariance_diagonal_collapses_to_power() {
        for &(t, h) in &[(0.7, 0.3), (2.0, 0.45), (1.0, 0.7)] {
            let c = fbm_covariance(t, t, h64(h)).unwrap();
            assert!((c - t.powf(2.0 * h)).abs() < 1e-15);
        }
    }

    #[test]
    fn covariance_brownian_case_is_minimum() {
        let c = fbm_covariance(2.0, 1.0, h64(0.5)).unwrap();
        assert!((c - 1.0).abs() < 1e-15);
    }

    #[test]
    fn covariance_closed_form_value() {
        // ½(2^{0.6} + 1 − 1) = 2^{−0.4}
        let c = fbm_covariance(2.0, 1.0, h64(0.3)).unwrap();
        assert!((c - 2f64.powf(-0.4)).abs() < 1e-15);
        assert!((c - 0.757_858_283_255_199_1).abs() < 1e-12);
    }

    #[test]
    fn covariance_rejects_negative_times() {
        assert!(fbm_covariance(-1.0, 1.0, h64(0.3)).is_err());
        assert!(fbm_covariance(1.0, -1.0, h64(0.3)).is_err());
    }

    #[test]
    fn autocovariance_lag_zero_is_one() {
        for &h in &[0.1, 0.3, 0.5, 0.7, 0.9] {
            assert_eq!(fgn_autocovariance(0, h64(h)), 1.0);
        }
    }

    #[test]
    fn autocovariance_brownian_increments_uncorrelated() {
        for lag in 1..50 {
            assert_eq!(fgn_autocovariance(lag, h64(0.5)), 0.0);
        }
    }

    #[test]
    fn autocovariance_lag_one_closed_form() {
        // 2^{2H−1} − 1 at H = 0.3
        let g = fgn_autocovariance(1, h64(0.3));
        assert!((g - (2f64.powf(-0.4) - 1.0)).abs() < 1e-15);
        assert!((g + 0.242_141_716_744_800_9).abs() < 1e-12);
    }

    #[test]
    fn autocovariance_negative_for_rough_indices() {
        for &h in &[0.1, 0.2, 0.3, 0.4] {
            let hurst = h64(h);
            for lag in 1..=10_000 {
                let g = fgn_autocovariance(lag, hurst);
                assert!(g < 0.0, "γ({lag}) = {g} not negative at H = {h}");
            }
        }
    }

    #[test]
    fn autocovariance_decay_bound() {
        // |γ(k)| ≤ 2·k^{2H−2} for k ≥ 2.
        for &h in &[0.1, 0.2, 0.3, 0.4, 0.6, 0.75, 0.9] {
            let hurst = h64(h);
            for lag in 2..=10_000usize {
                let g = fgn_autocovariance(lag, hurst).abs();
                let bound = 2.0 * (lag as f64).powf(2.0 * h - 2.0);
                assert!(g <= bound, "|γ({lag})| = {g} above {bound} at H = {h}");
            }
        }
    }

    #[test]
    fn autocovariance_factored_form_matches_direct_evaluation() {
        // At moderate lags the textbook expression is still accurate enough
        // to cross-check the cancellation-aware form.
        for &h in &[0.1, 0.3, 0.45, 0.7] {
            let hurst = h64(h);
            for lag in 2..=64usize {
                let k = lag as f64;
                let direct = 0.5
                    * ((k + 1.0).powf(2.0 * h) - 2.0 * k.powf(2.0 * h) + (k - 1.0).powf(2.0 * h));
                let factored = fgn_autocovariance(lag, hurst);
                // The textbook expression itself loses ~k²·eps relative
                // accuracy, so the agreement bound scales with the lag.
                let tol = (lag as f64).powi(2) * 1e-14 * direct.abs();
                assert!(
                    (factored - direct).abs() <= tol,
                    "lag {lag}, H {h}: {factored} vs {direct}"
                );
            }
        }
    }

    #[test]
    fn increment_sums_reproduce_path_covariance() {
        // Cov(B(i), B(j)) = Σ_{p≤i} Σ_{q≤j} γ(|p−q|), checked exhaustively
        // on the integer grid up to 32.
        let hurst = h64(0.3);
        for i in 1..=32usize {
            for j in 1..=32usize {
                let direct = fbm_covariance(i as f64, j as f64, hurst).unwrap();
                let mut acc = 0.0;
                for p in 1..=i {
                    for q in 1..=j {
                        acc += fgn_autocovariance(p.abs_diff(q), hurst);
                    }
                }
                assert!(
                    (acc - direct).abs() <= 1e-9 * direct.abs().max(1.0),
                    "({i}, {j}): {acc} vs {direct}"
                );
            }
        }
    }

    #[test]
    fn sampling_is_deterministic_per_seed_and_method() {
        for method in [
            FgnMethod::CirculantEmbedding,
            FgnMethod::Cholesky,
            FgnMethod::Hosking,
        ] {
            let a = sample_fgn(257, h64(0.3), 91, method).unwrap();
            let b = sample_fgn(257, h64(0.3), 91, method).unwrap();
            assert_eq!(a.increments, b.increments);
            assert_eq!(a.method, method);
            let c = sample_fgn(257, h64(0.3), 92, method).unwrap();
            assert_ne!(a.increments, c.increments);
        }
    }

    #[test]
    fn sample_length_and_finiteness() {
        for n in [1usize, 2, 3, 17, 1024] {
            let s = sample_fgn(n, h64(0.2), 7, FgnMethod::CirculantEmbedding).unwrap();
            assert_eq!(s.increments.len(), n);
            assert!(s.increments.iter().all(|v| v.is_finite()));
        }
    }

    #[test]
    fn zero_length_is_a_domain_error() {
        assert!(sample_fgn::<f64>(0, h64(0.3), 1, FgnMethod::CirculantEmbedding).is_err());
    }

    #[test]
    fn cholesky_cap_is_enforced() {
        let result = FgnSampler::<f64>::with_options(
            64,
            h64(0.3),
            FgnMethod::Cholesky,
            FgnSamplerOptions {
                fallback_to_cholesky: false,
                dense_cap: 32,
            },
        );
        assert!(matches!(result.err(), Some(Error::MethodUnavailable(_))));
    }

    #[test]
    fn fbm_path_starts_at_zero_exactly() {
        let path = sample_fbm(64, 2.0, h64(0.3), 5).unwrap();
        assert_eq!(path.values[0], 0.0);
        assert_eq!(path.values.len(), 65);
        assert_eq!(path.times[0], 0.0);
        assert_eq!(*path.times.last().unwrap(), 2.0);
    }

    #[test]
    fn fbm_values_are_scaled_cumulative_sums() {
        let steps = 37;
        let horizon = 1.7;
        let hurst = h64(0.3);
        let sampler = FbmSampler::new(steps, horizon, hurst).unwrap();
        let path = sampler.sample(11);
        let fgn = FgnSampler::new(steps, hurst, FgnMethod::CirculantEmbedding)
            .unwrap()
            .sample(11);
        let scale = (horizon / steps as f64).powf(0.3);
        let mut running = 0.0;
        for k in 0..steps {
            running += fgn.increments[k];
            assert_eq!(path.values[k + 1], scale * running);
        }
    }

    #[test]
    fn fbm_rejects_nonpositive_horizon() {
        assert!(sample_fbm(8, 0.0, h64(0.3), 1).is_err());
        assert!(sample_fbm(8, -1.0, h64(0.3), 1).is_err());
    }

    #[test]
    fn generic_over_f32_compiles_and_runs() {
        let hurst = Hurst::<f32>::new(0.3).unwrap();
        let s = sample_fgn(64, hurst, 3, FgnMethod::CirculantEmbedding).unwrap();
        assert_eq!(s.increments.len(), 64);
        assert!(s.increments.iter().all(|v| v.is_finite()));
    }
}
