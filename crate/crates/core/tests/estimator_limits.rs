//! Scaled-variation limits and estimator behavior on sampled paths: the
//! normalized first and second variations of pure fBm converge to their
//! closed-form limits, the same limits survive the drift component of the
//! simulated process, and the reciprocal integral stays bounded away from
//! zero at growing horizons.

use rough_bessel::bessel::{simulate, ModelParams};
use rough_bessel::estimation::{
    estimate_drift, estimate_hurst, quadratic_variation, second_order_variation, ObservedPath,
};
use rough_bessel::fbm::{FbmSampler, Hurst};
use rough_bessel::seed::replication_seed;

fn mean(v: &[f64]) -> f64 {
    v.iter().sum::<f64>() / v.len() as f64
}

fn scaled_variations(observed: &ObservedPath<f64>, hurst: f64) -> (f64, f64) {
    let n = observed.step_count() as f64;
    let t = observed.horizon();
    let scale = (n / t).powf(2.0 * hurst - 1.0);
    (
        scale * quadratic_variation(observed),
        scale * second_order_variation(observed).unwrap(),
    )
}

#[test]
fn variation_limits_on_pure_fbm() {
    // (n/T)^{2H−1}·V12(σB) → σ²T and the V22 analogue → (4 − 2^{2H})σ²T.
    let (h, sigma, horizon, steps) = (0.3f64, 1.5f64, 2.0f64, 1usize << 13);
    let sampler = FbmSampler::new(steps, horizon, Hurst::new(h).unwrap()).unwrap();
    let mut v12_batch = Vec::new();
    let mut v22_batch = Vec::new();
    for r in 0..100u64 {
        let path = sampler.sample(replication_seed(0x11F, r));
        let values: Vec<f64> = path.values.iter().map(|v| sigma * v).collect();
        let observed = ObservedPath::from_values(values, horizon).unwrap();
        let (v12, v22) = scaled_variations(&observed, h);
        v12_batch.push(v12);
        v22_batch.push(v22);
    }
    let expected_v12 = sigma * sigma * horizon;
    let expected_v22 = (4.0 - 2f64.powf(2.0 * h)) * sigma * sigma * horizon;
    assert!(
        (mean(&v12_batch) / expected_v12 - 1.0).abs() < 0.05,
        "scaled V12 {} vs {expected_v12}",
        mean(&v12_batch)
    );
    assert!(
        (mean(&v22_batch) / expected_v22 - 1.0).abs() < 0.05,
        "scaled V22 {} vs {expected_v22}",
        mean(&v22_batch)
    );
}

#[test]
fn variation_limits_survive_the_drift_component() {
    // The accumulated drift part has vanishing quadratic variation, so the
    // same limits hold for the simulated process.
    let h = 0.3f64;
    let params = ModelParams::new(1.0, 2.0, 1.0, Hurst::new(h).unwrap(), 1e-4).unwrap();
    let (horizon, steps) = (1.0f64, 1usize << 13);
    let sampler = FbmSampler::new(steps, horizon, params.hurst).unwrap();
    let mut v12_batch = Vec::new();
    let mut v22_batch = Vec::new();
    for r in 0..100u64 {
        let driver = sampler.sample(replication_seed(0x2F2, r));
        let path = simulate(&params, &driver).unwrap();
        let (v12, v22) = scaled_variations(&path.observed(), h);
        v12_batch.push(v12);
        v22_batch.push(v22);
    }
    let expected_v12 = horizon; // σ = 1
    let expected_v22 = (4.0 - 2f64.powf(2.0 * h)) * horizon;
    assert!((mean(&v12_batch) / expected_v12 - 1.0).abs() < 0.05);
    assert!((mean(&v22_batch) / expected_v22 - 1.0).abs() < 0.05);
}

#[test]
fn hurst_estimates_concentrate_near_the_true_index() {
    let params = ModelParams::new(1.0, 2.0, 1.0, Hurst::<f64>::new(0.3).unwrap(), 1e-4).unwrap();
    let sampler = FbmSampler::new(10_000, 1.0, params.hurst).unwrap();
    let mut batch = Vec::new();
    for r in 0..200u64 {
        let driver = sampler.sample(replication_seed(0x48_u64, r));
        let path = simulate(&params, &driver).unwrap();
        let estimate = estimate_hurst(&path.observed()).unwrap();
        assert!(estimate.estimate.is_finite());
        batch.push(estimate.estimate);
    }
    let m = mean(&batch);
    assert!((0.29..=0.31).contains(&m), "mean Hurst estimate {m}");
}

#[test]
fn reciprocal_integral_grows_like_the_square_root_of_the_horizon() {
    // T^{-1/2}·∫ 1/X stays bounded away from zero across seeds; this is the
    // growth behavior the drift estimator's consistency rests on.
    let params = ModelParams::new(1.0, 2.0, 1.0, Hurst::new(0.3).unwrap(), 1e-4).unwrap();
    let horizon = 10.0f64;
    let sampler = FbmSampler::new(10_000, horizon, params.hurst).unwrap();
    let mut min_scaled = f64::INFINITY;
    for r in 0..50u64 {
        let driver = sampler.sample(replication_seed(0x1E6, r));
        let path = simulate(&params, &driver).unwrap();
        let result = estimate_drift(&path.observed(), 0.001).unwrap();
        let scaled = result.diagnostics["integral_sum"] / horizon.sqrt();
        min_scaled = min_scaled.min(scaled);
    }
    assert!(
        min_scaled > 0.2,
        "scaled reciprocal integral dipped to {min_scaled}"
    );
}
