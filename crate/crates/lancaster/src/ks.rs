//! One-sample Kolmogorov-Smirnov test utilities.
//!
//! Used by the study drivers and the verification suites to check empirical
//! laws against reference distributions.

use crate::normal::normal_cdf;

/// KS statistic D_n of a sample against a continuous cdf.
pub fn ks_statistic<F: Fn(f64) -> f64>(sample: &[f64], cdf: F) -> f64 {
    let mut sorted = sample.to_vec();
    sorted.sort_by(|a, b| a.partial_cmp(b).unwrap());
    let n = sorted.len() as f64;
    let mut d: f64 = 0.0;
    for (i, x) in sorted.iter().enumerate() {
        let f = cdf(*x);
        let lo = i as f64 / n;
        let hi = (i + 1) as f64 / n;
        d = d.max((f - lo).abs()).max((hi - f).abs());
    }
    d
}

/// Asymptotic survival function of sqrt(n) D_n: the Kolmogorov distribution
/// tail 2 sum (-1)^{k-1} exp(-2 k^2 x^2).
pub fn kolmogorov_sf(x: f64) -> f64 {
    if x <= 0.0 {
        return 1.0;
    }
    let mut sum = 0.0;
    let mut sign = 1.0;
    for k in 1..=100 {
        let term = (-2.0 * (k * k) as f64 * x * x).exp();
        if term < 1e-14 {
            break;
        }
        sum += sign * term;
        sign = -sign;
    }
    (2.0 * sum).clamp(0.0, 1.0)
}

/// KS test of a sample against N(0, 1); returns (statistic, asymptotic p).
pub fn ks_test_standard_normal(sample: &[f64]) -> (f64, f64) {
    let d = ks_statistic(sample, normal_cdf);
    let p = kolmogorov_sf((sample.len() as f64).sqrt() * d);
    (d, p)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rng::stream_rng;
    use rand_distr::{Distribution, StandardNormal};

    #[test]
    fn kolmogorov_tail_values() {
        // K(1.36) ~ 0.95, K(1.63) ~ 0.99: the classical critical points.
        assert!((kolmogorov_sf(1.36) - 0.05).abs() < 0.002);
        assert!((kolmogorov_sf(1.63) - 0.01).abs() < 0.001);
        assert_eq!(kolmogorov_sf(0.0), 1.0);
    }

    #[test]
    fn normal_sample_passes_uniform_sample_fails() {
        let mut rng = stream_rng(31, &[1]);
        let normal: Vec<f64> = (0..4000).map(|_| StandardNormal.sample(&mut rng)).collect();
        let (_, p) = ks_test_standard_normal(&normal);
        assert!(p > 0.01, "p = {p}");

        let uniform: Vec<f64> = (0..4000).map(|i| i as f64 / 4000.0).collect();
        let (_, p) = ks_test_standard_normal(&uniform);
        assert!(p < 1e-6, "p = {p}");
    }
}
