//! Statistical validation of the fGn/fBm samplers against the covariance
//! formulas. Every check uses fixed seeds, a Monte Carlo point estimate, and
//! a standard error computed from per-seed batch estimates, so outcomes are
//! reproducible.

use rough_bessel::fbm::{
    fbm_covariance, fgn_autocovariance, FbmSampler, FgnMethod, FgnSampler, Hurst,
};
use rough_bessel::seed::replication_seed;

fn hurst(v: f64) -> Hurst<f64> {
    Hurst::new(v).unwrap()
}

/// Mean and standard error of a batch of per-seed estimates.
fn mean_and_se(batch: &[f64]) -> (f64, f64) {
    let n = batch.len() as f64;
    let mean = batch.iter().sum::<f64>() / n;
    let var = batch.iter().map(|v| (v - mean).powi(2)).sum::<f64>() / (n - 1.0);
    (mean, (var / n).sqrt())
}

/// Per-seed sample autocovariance at `lag` (mean-zero process).
fn sample_autocov(values: &[f64], lag: usize) -> f64 {
    let n = values.len();
    values[..n - lag]
        .iter()
        .zip(values[lag..].iter())
        .map(|(a, b)| a * b)
        .sum::<f64>()
        / (n - lag) as f64
}

fn autocov_batches(
    sampler: &FgnSampler<f64>,
    seeds: u64,
    base: u64,
    max_lag: usize,
) -> Vec<Vec<f64>> {
    let mut batches: Vec<Vec<f64>> = (0..=max_lag)
        .map(|_| Vec::with_capacity(seeds as usize))
        .collect();
    for r in 0..seeds {
        let sample = sampler.sample(replication_seed(base, r));
        for (lag, batch) in batches.iter_mut().enumerate() {
            batch.push(sample_autocov(&sample.increments, lag));
        }
    }
    batches
}

#[test]
fn circulant_autocovariance_matches_formula_at_low_lags() {
    let n = 4096;
    for h in [0.1, 0.3, 0.45, 0.5, 0.7] {
        let sampler = FgnSampler::new(n, hurst(h), FgnMethod::CirculantEmbedding).unwrap();
        let batches = autocov_batches(&sampler, 128, 0xFB0 + (h * 100.0) as u64, 5);
        for (lag, batch) in batches.iter().enumerate() {
            let (mean, se) = mean_and_se(batch);
            let expected = fgn_autocovariance(lag, hurst(h));
            assert!(
                (mean - expected).abs() <= 4.0 * se,
                "H = {h}, lag {lag}: {mean} vs {expected} (se {se})"
            );
        }
    }
}

#[test]
fn cholesky_and_circulant_agree_statistically() {
    let n = 1024;
    let h = hurst(0.3);
    let ce = FgnSampler::new(n, h, FgnMethod::CirculantEmbedding).unwrap();
    let chol = FgnSampler::new(n, h, FgnMethod::Cholesky).unwrap();
    let ce_batches = autocov_batches(&ce, 128, 0xCE, 5);
    let chol_batches = autocov_batches(&chol, 128, 0xC401, 5);
    for lag in 0..=5 {
        let (ce_mean, ce_se) = mean_and_se(&ce_batches[lag]);
        let (chol_mean, chol_se) = mean_and_se(&chol_batches[lag]);
        let gap = (ce_mean - chol_mean).abs();
        let combined = (ce_se.powi(2) + chol_se.powi(2)).sqrt();
        assert!(
            gap <= 4.0 * combined,
            "lag {lag}: |{ce_mean} - {chol_mean}| > 4x{combined}"
        );
    }
}

#[test]
fn hosking_agrees_with_the_formula() {
    let n = 1024;
    let h = hurst(0.3);
    let sampler = FgnSampler::new(n, h, FgnMethod::Hosking).unwrap();
    let batches = autocov_batches(&sampler, 128, 0x405, 3);
    for (lag, batch) in batches.iter().enumerate() {
        let (mean, se) = mean_and_se(batch);
        let expected = fgn_autocovariance(lag, h);
        assert!(
            (mean - expected).abs() <= 4.0 * se,
            "lag {lag}: {mean} vs {expected} (se {se})"
        );
    }
}

#[test]
fn terminal_variance_scales_with_the_hurst_exponent() {
    // Var B(T) = T^{2H}, estimated over 1000 seeds.
    let (steps, horizon, h) = (512usize, 2.0, hurst(0.3));
    let sampler = FbmSampler::new(steps, horizon, h).unwrap();
    let batch: Vec<f64> = (0..1000)
        .map(|r| {
            let v = *sampler
                .sample(replication_seed(0x7E_u64, r))
                .values
                .last()
                .unwrap();
            v * v
        })
        .collect();
    let (mean, se) = mean_and_se(&batch);
    let expected = horizon.powf(0.6);
    assert!(
        (mean - expected).abs() <= 4.0 * se,
        "{mean} vs {expected} (se {se})"
    );
}

#[test]
fn brownian_case_has_min_covariance() {
    // For H = 1/2, Cov(B(T/2), B(T)) = T/2; n = 1000 grid, T = 1.
    let sampler = FbmSampler::new(1000, 1.0, hurst(0.5)).unwrap();
    let batch: Vec<f64> = (0..1000)
        .map(|r| {
            let path = sampler.sample(replication_seed(0xB0, r));
            path.values[500] * path.values[1000]
        })
        .collect();
    let (mean, se) = mean_and_se(&batch);
    assert!((mean - 0.5).abs() <= 4.0 * se, "{mean} vs 0.5 (se {se})");
}

#[test]
fn brownian_grid_covariance_matches_minimum_kernel() {
    // Empirical covariance on an 8-point grid vs min(s, t) for H = 1/2.
    let steps = 64usize;
    let sampler = FbmSampler::new(steps, 1.0, hurst(0.5)).unwrap();
    let nodes: Vec<usize> = (1..=8).map(|k| k * steps / 8).collect();
    let seeds = 1500u64;
    let mut products: Vec<Vec<f64>> = (0..nodes.len() * nodes.len())
        .map(|_| Vec::with_capacity(seeds as usize))
        .collect();
    for r in 0..seeds {
        let path = sampler.sample(replication_seed(0x812, r));
        for (i, &a) in nodes.iter().enumerate() {
            for (j, &b) in nodes.iter().enumerate() {
                products[i * nodes.len() + j].push(path.values[a] * path.values[b]);
            }
        }
    }
    for (i, &a) in nodes.iter().enumerate() {
        for (j, &b) in nodes.iter().enumerate() {
            let (mean, se) = mean_and_se(&products[i * nodes.len() + j]);
            let expected = (a.min(b)) as f64 / steps as f64;
            assert!(
                (mean - expected).abs() <= 4.0 * se,
                "({a},{b}): {mean} vs {expected} (se {se})"
            );
        }
    }
}

#[test]
fn fbm_covariance_positively_checks_sampler_marginals() {
    // Spot-check one rough-index covariance entry via Monte Carlo.
    let sampler = FbmSampler::new(512, 1.0, hurst(0.3)).unwrap();
    let (i, j) = (256usize, 512usize);
    let batch: Vec<f64> = (0..1200)
        .map(|r| {
            let path = sampler.sample(replication_seed(0xC0F, r));
            path.values[i] * path.values[j]
        })
        .collect();
    let (mean, se) = mean_and_se(&batch);
    let expected = fbm_covariance(0.5, 1.0, hurst(0.3)).unwrap();
    assert!(
        (mean - expected).abs() <= 4.0 * se,
        "{mean} vs {expected} (se {se})"
    );
}

#[test]
fn quadratic_sum_of_unit_spacing_noise_is_ergodic() {
    // (1/n) sum of squared unit-spacing increments tends to 1; the mean over
    // 200 seeds at n = 2^14 lands within 5%.
    let n = 1 << 14;
    let sampler = FgnSampler::new(n, hurst(0.3), FgnMethod::CirculantEmbedding).unwrap();
    let batch: Vec<f64> = (0..200)
        .map(|r| {
            let s = sampler.sample(replication_seed(0xE49, r));
            s.increments.iter().map(|v| v * v).sum::<f64>() / n as f64
        })
        .collect();
    let (mean, _) = mean_and_se(&batch);
    assert!((mean - 1.0).abs() < 0.05, "ergodic mean {mean}");
}
