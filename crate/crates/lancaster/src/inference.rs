//! Independence tests and confidence intervals for the Lancaster
//! coefficients.
//!
//! Asymptotic tests use the max-abs limit law under independence; permutation
//! tests re-pair one margin with seeded random permutations and use the
//! add-one p-value estimator. Confidence intervals come in an
//! anti-conservative normal form and a conservative form whose lower endpoint
//! uses the quantile of the max-pair limit law; the asymptotic covariance is
//! estimated by moment plug-in or by the covariance bootstrap.

use rand::seq::SliceRandom;
use rand::Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::asymptotics::{sigma_star, sigma_star_independence, CovMatrix2, LawKind, LimitLaw};
use crate::error::{Error, Result};
use crate::estimators::{
    lancaster_linear, lancaster_rank, linear_components, rank_components, Coefficient,
    LancasterEstimate,
};
use crate::normal::quantile_unchecked;
use crate::rng::{derive_seed, stream_rng, DOMAIN_BOOTSTRAP, DOMAIN_PERMUTATION};
use crate::sample::Sample;

/// Which Lancaster estimator a covariance bootstrap or interval refers to.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum EstimatorKind {
    Rank,
    Linear,
}

impl EstimatorKind {
    pub fn name(&self) -> &'static str {
        match self {
            EstimatorKind::Rank => "rank",
            EstimatorKind::Linear => "linear",
        }
    }
}

/// Tail handling of the moment-based asymptotic test.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TailMode {
    /// Vanishing third moments: the standard (2 Phi(z) - 1)^2 law.
    AssumeSymmetric,
    /// Estimate tau from the sample moments and use the general max-abs law.
    EstimateTau,
}

/// How a test was carried out.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum TestMethod {
    RankAsymptotic,
    RankPermutation,
    LinearPermutation,
    LinearAsymptoticSym,
    LinearAsymptoticTau,
    CompetitorPermutation(Coefficient),
}

impl TestMethod {
    pub fn name(&self) -> String {
        match self {
            TestMethod::RankAsymptotic => "rank_asymptotic".into(),
            TestMethod::RankPermutation => "rank_permutation".into(),
            TestMethod::LinearPermutation => "linear_permutation".into(),
            TestMethod::LinearAsymptoticSym => "linear_sym".into(),
            TestMethod::LinearAsymptoticTau => "linear_tau".into(),
            TestMethod::CompetitorPermutation(c) => format!("{}_permutation", c.name()),
        }
    }
}

/// Outcome of an independence test.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct TestResult {
    pub statistic: f64,
    pub p_value: f64,
    pub method: TestMethod,
    pub n_permutations: Option<usize>,
}

/// Survival function of the standard max-abs limit law, 1 - (2 Phi(z) - 1)^2.
fn max_abs_pvalue(statistic: f64, tau: f64) -> Result<f64> {
    let law = LimitLaw::new(LawKind::MaxAbsPair, 1.0, 1.0, tau)?;
    Ok((1.0 - law.cdf(statistic.max(0.0))?).clamp(0.0, 1.0))
}

/// Asymptotic test on sqrt(n) rho_L with the (2 Phi(z) - 1)^2 null law.
pub fn test_rank_asymptotic(s: &Sample) -> Result<TestResult> {
    let est = lancaster_rank(s)?;
    let statistic = (s.len() as f64).sqrt() * est.value;
    Ok(TestResult {
        statistic,
        p_value: max_abs_pvalue(statistic, 0.0)?,
        method: TestMethod::RankAsymptotic,
        n_permutations: None,
    })
}

/// Asymptotic test on sqrt(n) rho_L,l; `mode` picks the null law.
pub fn test_linear_asymptotic(s: &Sample, mode: TailMode) -> Result<TestResult> {
    if s.len() < 12 && mode == TailMode::EstimateTau {
        return Err(Error::SampleTooSmall {
            n: s.len(),
            min: 12,
        });
    }
    let est = lancaster_linear(s)?;
    let statistic = (s.len() as f64).sqrt() * est.value;
    let (tau, method) = match mode {
        TailMode::AssumeSymmetric => (0.0, TestMethod::LinearAsymptoticSym),
        TailMode::EstimateTau => (
            sigma_star_independence(s)?.tau(),
            TestMethod::LinearAsymptoticTau,
        ),
    };
    Ok(TestResult {
        statistic,
        p_value: max_abs_pvalue(statistic, tau)?,
        method,
        n_permutations: None,
    })
}

/// Monte Carlo permutation test with `b` random permutations of the y margin.
///
/// p = (1 + #{stat(x, pi(y)) >= stat(x, y)}) / (b + 1). Each permutation owns
/// the RNG stream (seed, replicate index), so the p-value is reproducible
/// regardless of parallel scheduling.
pub fn test_permutation(
    s: &Sample,
    coefficient: Coefficient,
    b: usize,
    seed: u64,
) -> Result<TestResult> {
    if b == 0 {
        return Err(Error::domain("need at least one permutation".to_string()));
    }
    let observed = coefficient.permutation_statistic(s.xs(), s.ys(), derive_seed(seed, &[0]))?;
    let exceed = (0..b)
        .into_par_iter()
        .map(|i| -> Result<usize> {
            let mut rng = stream_rng(seed, &[DOMAIN_PERMUTATION, i as u64]);
            let mut ys = s.ys().to_vec();
            ys.shuffle(&mut rng);
            let stat =
                coefficient.permutation_statistic(s.xs(), &ys, derive_seed(seed, &[i as u64 + 1]))?;
            Ok(usize::from(stat >= observed))
        })
        .try_reduce(|| 0, |a, b| Ok(a + b))?;
    let method = match coefficient {
        Coefficient::LancasterRank => TestMethod::RankPermutation,
        Coefficient::LancasterLinear => TestMethod::LinearPermutation,
        other => TestMethod::CompetitorPermutation(other),
    };
    Ok(TestResult {
        statistic: observed,
        p_value: (1 + exceed) as f64 / (b + 1) as f64,
        method,
        n_permutations: Some(b),
    })
}

/// Bootstrap estimate of the asymptotic covariance of sqrt(n) (rho_1, rho_2).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BootstrapCov {
    pub cov: CovMatrix2,
    /// Resamples that entered the covariance.
    pub used: usize,
    /// Resamples dropped after exhausting the degenerate-redraw retries.
    pub skipped: usize,
}

/// Covariance bootstrap: draw `b` resamples with replacement, evaluate the
/// component pair on each, and return n times the sample covariance of the
/// pairs. Degenerate resamples (possible for the moment estimator at small n)
/// are redrawn up to 10 times, then skipped and counted.
pub fn bootstrap_cov(
    s: &Sample,
    estimator: EstimatorKind,
    b: usize,
    seed: u64,
) -> Result<BootstrapCov> {
    if b < 2 {
        return Err(Error::domain(
            "bootstrap needs at least 2 resamples".to_string(),
        ));
    }
    let n = s.len();
    let pairs: Vec<Option<(f64, f64)>> = (0..b)
        .into_par_iter()
        .map(|i| {
            let mut bx = vec![0.0; n];
            let mut by = vec![0.0; n];
            for attempt in 0..10u64 {
                let mut rng = stream_rng(seed, &[DOMAIN_BOOTSTRAP, i as u64, attempt]);
                for j in 0..n {
                    let k = rng.gen_range(0..n);
                    bx[j] = s.xs()[k];
                    by[j] = s.ys()[k];
                }
                let comp = match estimator {
                    EstimatorKind::Rank => {
                        rank_components(&bx, &by).map(|(r1, r2, _)| (r1, r2))
                    }
                    EstimatorKind::Linear => linear_components(&bx, &by),
                };
                if let Ok(pair) = comp {
                    return Some(pair);
                }
            }
            None
        })
        .collect();

    let used: Vec<(f64, f64)> = pairs.iter().flatten().copied().collect();
    let skipped = b - used.len();
    if used.len() < 2 {
        return Err(Error::degenerate(
            "bootstrap produced fewer than 2 usable resamples".to_string(),
        ));
    }
    let m = used.len() as f64;
    let mean1 = used.iter().map(|p| p.0).sum::<f64>() / m;
    let mean2 = used.iter().map(|p| p.1).sum::<f64>() / m;
    let (mut c11, mut c12, mut c22) = (0.0, 0.0, 0.0);
    for (r1, r2) in &used {
        let d1 = r1 - mean1;
        let d2 = r2 - mean2;
        c11 += d1 * d1;
        c12 += d1 * d2;
        c22 += d2 * d2;
    }
    let denom = m - 1.0;
    let nf = n as f64;
    Ok(BootstrapCov {
        cov: CovMatrix2 {
            s11: nf * c11 / denom,
            s12: nf * c12 / denom,
            s22: nf * c22 / denom,
        },
        used: used.len(),
        skipped,
    })
}

/// The six confidence-interval constructions.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum CiMethod {
    /// Moment estimator, plug-in covariance, normal quantiles.
    PlugIn,
    /// Moment estimator, plug-in covariance, max-pair lower endpoint.
    PlugInConservative,
    /// Moment estimator, bootstrap covariance, normal quantiles.
    BootLinear,
    /// Moment estimator, bootstrap covariance, max-pair lower endpoint.
    BootLinearConservative,
    /// Rank estimator, bootstrap covariance, normal quantiles.
    BootRank,
    /// Rank estimator, bootstrap covariance, max-pair lower endpoint.
    BootRankConservative,
}

impl CiMethod {
    pub const ALL: [CiMethod; 6] = [
        CiMethod::PlugIn,
        CiMethod::PlugInConservative,
        CiMethod::BootLinear,
        CiMethod::BootLinearConservative,
        CiMethod::BootRank,
        CiMethod::BootRankConservative,
    ];

    pub fn name(&self) -> &'static str {
        match self {
            CiMethod::PlugIn => "plugin",
            CiMethod::PlugInConservative => "plugin_conservative",
            CiMethod::BootLinear => "boot_linear",
            CiMethod::BootLinearConservative => "boot_linear_conservative",
            CiMethod::BootRank => "boot_rank",
            CiMethod::BootRankConservative => "boot_rank_conservative",
        }
    }

    pub fn parse(name: &str) -> Result<Self> {
        match name.to_ascii_lowercase().as_str() {
            "plugin" | "ci_ll_p" => Ok(CiMethod::PlugIn),
            "plugin_conservative" | "ci_ll_pc" => Ok(CiMethod::PlugInConservative),
            "boot_linear" | "ci_ll_b" => Ok(CiMethod::BootLinear),
            "boot_linear_conservative" | "ci_ll_bc" => Ok(CiMethod::BootLinearConservative),
            "boot_rank" | "ci_l_b" => Ok(CiMethod::BootRank),
            "boot_rank_conservative" | "ci_l_bc" => Ok(CiMethod::BootRankConservative),
            other => Err(Error::InvalidConfig(format!(
                "unknown confidence interval method '{other}'; valid: plugin, \
                 plugin_conservative, boot_linear, boot_linear_conservative, boot_rank, \
                 boot_rank_conservative"
            ))),
        }
    }

    pub fn estimator(&self) -> EstimatorKind {
        match self {
            CiMethod::BootRank | CiMethod::BootRankConservative => EstimatorKind::Rank,
            _ => EstimatorKind::Linear,
        }
    }

    pub fn is_conservative(&self) -> bool {
        matches!(
            self,
            CiMethod::PlugInConservative
                | CiMethod::BootLinearConservative
                | CiMethod::BootRankConservative
        )
    }

    fn uses_bootstrap(&self) -> bool {
        !matches!(self, CiMethod::PlugIn | CiMethod::PlugInConservative)
    }
}

/// A confidence interval for the Lancaster coefficient, clamped to [0, 1].
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ConfidenceInterval {
    pub lower: f64,
    pub upper: f64,
    pub level: f64,
    pub method: CiMethod,
    /// Lower endpoint was clamped at 0.
    pub truncated_lower: bool,
    /// Upper endpoint was clamped at 1.
    pub truncated_upper: bool,
}

impl ConfidenceInterval {
    pub fn length(&self) -> f64 {
        self.upper - self.lower
    }

    pub fn contains(&self, value: f64) -> bool {
        self.lower <= value && value <= self.upper
    }
}

/// Variance floor substituted when a covariance diagonal estimate is <= 0;
/// the off-diagonal is zeroed alongside.
const VARIANCE_DELTA: f64 = 1e-6;

fn apply_delta_rule(mut cov: CovMatrix2) -> CovMatrix2 {
    if cov.s11 <= 0.0 {
        cov.s11 = VARIANCE_DELTA;
        cov.s12 = 0.0;
    }
    if cov.s22 <= 0.0 {
        cov.s22 = VARIANCE_DELTA;
        cov.s12 = 0.0;
    }
    cov
}

pub(crate) fn ci_from_parts(
    est: &LancasterEstimate,
    cov: CovMatrix2,
    method: CiMethod,
    level: f64,
    n: usize,
) -> Result<ConfidenceInterval> {
    let cov = apply_delta_rule(cov);
    let alpha = 1.0 - level;
    let sqrt_n = (n as f64).sqrt();
    let z = quantile_unchecked(1.0 - alpha / 2.0);
    // Scale of the winning component.
    let s = match est.winner {
        crate::estimators::Component::First => cov.sigma1(),
        crate::estimators::Component::Second => cov.sigma2(),
    };
    let upper_raw = est.value + z * s / sqrt_n;
    let lower_raw = if method.is_conservative() {
        // The max-pair law is stochastically larger than either normal
        // component, so its quantile widens the lower side to at least the
        // nominal level in every case of the limit theorem.
        let kind = if est.rho1 * est.rho2 >= 0.0 {
            LawKind::MaxPair
        } else {
            LawKind::MaxNegPair
        };
        let law = LimitLaw::from_cov(kind, &cov)?;
        est.value - law.quantile(1.0 - alpha / 2.0)? / sqrt_n
    } else {
        est.value - z * s / sqrt_n
    };
    let lower = lower_raw.max(0.0);
    let upper = upper_raw.min(1.0);
    Ok(ConfidenceInterval {
        lower,
        upper: upper.max(lower),
        level,
        method,
        truncated_lower: lower_raw < 0.0,
        truncated_upper: upper_raw > 1.0,
    })
}

/// Confidence interval for rho_L (rank methods) or rho_L,l (moment methods)
/// at the given level. `b_boot` and `seed` drive the covariance bootstrap and
/// are ignored by the plug-in methods.
pub fn confidence_interval(
    s: &Sample,
    method: CiMethod,
    level: f64,
    b_boot: usize,
    seed: u64,
) -> Result<ConfidenceInterval> {
    if !(level > 0.0 && level < 1.0) {
        return Err(Error::domain(format!(
            "confidence level must lie in (0, 1), got {level}"
        )));
    }
    let est = match method.estimator() {
        EstimatorKind::Rank => lancaster_rank(s)?,
        EstimatorKind::Linear => lancaster_linear(s)?,
    };
    let cov = if method.uses_bootstrap() {
        bootstrap_cov(s, method.estimator(), b_boot, seed)?.cov
    } else {
        sigma_star(s)?
    };
    ci_from_parts(&est, cov, method, level, s.len())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::asymptotics::bvn_sigma_star;
    use crate::estimators::Component;
    use crate::normal::normal_cdf;
    use crate::samplers::{sample, DistributionSpec};

    fn identity_sample(n: usize) -> Sample {
        let xs: Vec<f64> = (0..n).map(|i| i as f64 * 0.37 - 3.0).collect();
        Sample::new(xs.clone(), xs).unwrap()
    }

    #[test]
    fn rank_asymptotic_perfect_dependence() {
        let s = identity_sample(100);
        let r = test_rank_asymptotic(&s).unwrap();
        assert!((r.statistic - 10.0).abs() < 1e-9);
        assert!(r.p_value < 1e-15);
    }

    #[test]
    fn rank_asymptotic_pvalue_formula() {
        let s = sample(&DistributionSpec::Bvn { rho: 0.3 }, 250, 9).unwrap();
        let r = test_rank_asymptotic(&s).unwrap();
        let expected = 1.0 - (2.0 * normal_cdf(r.statistic) - 1.0).powi(2);
        assert!((r.p_value - expected).abs() < 1e-15);
        // The 0.95 quantile of the null law sits near 2.2365.
        assert!((max_abs_pvalue(2.2365, 0.0).unwrap() - 0.05).abs() < 1e-3);
    }

    #[test]
    fn linear_tau_zero_coincides_with_symmetric() {
        for &stat in &[0.3, 1.1, 2.5] {
            assert_eq!(
                max_abs_pvalue(stat, 0.0).unwrap(),
                1.0 - (2.0 * normal_cdf(stat) - 1.0).powi(2)
            );
        }
        // And through the public API the two modes agree when tau-hat ~ 0.
        let s = sample(&DistributionSpec::Bvn { rho: 0.0 }, 400, 77).unwrap();
        let sym = test_linear_asymptotic(&s, TailMode::AssumeSymmetric).unwrap();
        let tau = test_linear_asymptotic(&s, TailMode::EstimateTau).unwrap();
        assert_eq!(sym.statistic, tau.statistic);
        assert!((sym.p_value - tau.p_value).abs() < 0.02);
    }

    #[test]
    fn permutation_identity_sample_minimal_p() {
        let s = identity_sample(40);
        let r = test_permutation(&s, Coefficient::LancasterRank, 99, 5).unwrap();
        assert_eq!(r.p_value, 1.0 / 100.0);
        assert_eq!(r.method, TestMethod::RankPermutation);
        assert_eq!(r.n_permutations, Some(99));
    }

    #[test]
    fn permutation_deterministic_in_seed() {
        let s = sample(&DistributionSpec::Bvn { rho: 0.2 }, 60, 13).unwrap();
        let a = test_permutation(&s, Coefficient::Spearman, 200, 99).unwrap();
        let b = test_permutation(&s, Coefficient::Spearman, 200, 99).unwrap();
        assert_eq!(a, b);
        let c = test_permutation(&s, Coefficient::Spearman, 200, 100).unwrap();
        assert!(a.p_value != c.p_value || a.statistic == c.statistic);
    }

    #[test]
    fn permutation_pvalues_live_on_grid() {
        let s = sample(&DistributionSpec::Bvn { rho: 0.1 }, 30, 3).unwrap();
        for coef in [Coefficient::Pearson, Coefficient::Xi] {
            let r = test_permutation(&s, coef, 49, 8).unwrap();
            let scaled = r.p_value * 50.0;
            assert!((scaled - scaled.round()).abs() < 1e-9);
            assert!(r.p_value >= 1.0 / 50.0 && r.p_value <= 1.0);
        }
    }

    #[test]
    fn permutation_matches_exhaustive_enumeration() {
        // n = 5: exact p over all 120 permutations vs a large Monte Carlo run.
        let xs = vec![0.2, 1.4, -0.7, 2.2, 0.9];
        let ys = vec![0.1, 1.1, -0.2, 1.9, 1.3];
        let s = Sample::new(xs.clone(), ys.clone()).unwrap();
        let obs = Coefficient::Pearson
            .permutation_statistic(&xs, &ys, 0)
            .unwrap();

        let mut perm = ys.clone();
        let mut count = 0usize;
        let mut total = 0usize;
        permute_all(&mut perm, 0, &mut |p| {
            total += 1;
            let stat = Coefficient::Pearson.permutation_statistic(&xs, p, 0).unwrap();
            if stat >= obs {
                count += 1;
            }
        });
        assert_eq!(total, 120);
        let exact = count as f64 / total as f64;

        let mc = test_permutation(&s, Coefficient::Pearson, 20_000, 17).unwrap();
        assert!(
            (mc.p_value - exact).abs() < 0.02,
            "mc {} vs exact {exact}",
            mc.p_value
        );
    }

    fn permute_all<F: FnMut(&[f64])>(v: &mut Vec<f64>, k: usize, f: &mut F) {
        if k == v.len() {
            f(v);
            return;
        }
        for i in k..v.len() {
            v.swap(k, i);
            permute_all(v, k + 1, f);
            v.swap(k, i);
        }
    }

    #[test]
    fn bootstrap_cov_near_closed_form_under_normality() {
        let s = sample(&DistributionSpec::Bvn { rho: 0.5 }, 800, 2024).unwrap();
        let bc = bootstrap_cov(&s, EstimatorKind::Linear, 500, 11).unwrap();
        assert_eq!(bc.skipped, 0);
        let want = bvn_sigma_star(0.5);
        assert!(
            (bc.cov.s11 - want.s11).abs() < 0.1,
            "s11 {} vs {}",
            bc.cov.s11,
            want.s11
        );
    }

    #[test]
    fn bootstrap_cov_rank_near_identity_under_independence() {
        // Averaged over base samples: a single bootstrap estimate varies with
        // the draw, the mean settles near the Proposition-2 identity.
        let (mut s11, mut s22, mut s12) = (0.0, 0.0, 0.0);
        let m = 5;
        for seed in 0..m {
            let s = sample(&DistributionSpec::Bvn { rho: 0.0 }, 800, 55 + seed).unwrap();
            let bc = bootstrap_cov(&s, EstimatorKind::Rank, 400, 7 + seed).unwrap();
            s11 += bc.cov.s11;
            s22 += bc.cov.s22;
            s12 += bc.cov.s12;
        }
        let m = m as f64;
        s11 /= m;
        s22 /= m;
        s12 /= m;
        assert!((s11 - 1.0).abs() < 0.15, "s11 = {s11}");
        assert!((s22 - 1.0).abs() < 0.15, "s22 = {s22}");
        assert!(s12.abs() < 0.15, "s12 = {s12}");
    }

    #[test]
    fn bootstrap_cov_is_deterministic() {
        let s = sample(&DistributionSpec::UnifDisc, 100, 31).unwrap();
        let a = bootstrap_cov(&s, EstimatorKind::Rank, 100, 3).unwrap();
        let b = bootstrap_cov(&s, EstimatorKind::Rank, 100, 3).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn delta_rule_collapses_interval_scale() {
        // A zero covariance matrix is replaced by delta on the diagonal.
        let est = LancasterEstimate {
            rho1: 0.4,
            rho2: 0.1,
            value: 0.4,
            winner: Component::First,
            ties: false,
        };
        let zero = CovMatrix2 {
            s11: 0.0,
            s12: 0.3,
            s22: 0.0,
        };
        let n = 100;
        let ci = ci_from_parts(&est, zero, CiMethod::BootLinear, 0.95, n).unwrap();
        let z = quantile_unchecked(0.975);
        let half = z * VARIANCE_DELTA.sqrt() / (n as f64).sqrt();
        assert!((ci.lower - (0.4 - half)).abs() < 1e-12);
        assert!((ci.upper - (0.4 + half)).abs() < 1e-12);
        assert!(!ci.truncated_lower && !ci.truncated_upper);
    }

    #[test]
    fn conservative_widen_only_lower_endpoint() {
        let s = sample(&DistributionSpec::Bvn { rho: 0.5 }, 200, 404).unwrap();
        for (anti, cons) in [
            (CiMethod::PlugIn, CiMethod::PlugInConservative),
            (CiMethod::BootLinear, CiMethod::BootLinearConservative),
            (CiMethod::BootRank, CiMethod::BootRankConservative),
        ] {
            let a = confidence_interval(&s, anti, 0.95, 300, 1).unwrap();
            let c = confidence_interval(&s, cons, 0.95, 300, 1).unwrap();
            assert!(c.lower <= a.lower + 1e-12, "{anti:?}: {} vs {}", c.lower, a.lower);
            assert!((c.upper - a.upper).abs() < 1e-12, "{anti:?}");
            assert!(a.lower <= a.upper && c.lower <= c.upper);
            assert!(a.lower >= 0.0 && a.upper <= 1.0);
        }
    }

    #[test]
    fn interval_rejects_bad_level() {
        let s = identity_sample(50);
        assert!(confidence_interval(&s, CiMethod::PlugIn, 1.5, 100, 1).is_err());
        assert!(confidence_interval(&s, CiMethod::PlugIn, 0.0, 100, 1).is_err());
    }

    #[test]
    fn ci_method_names_roundtrip() {
        for m in CiMethod::ALL {
            assert_eq!(CiMethod::parse(m.name()).unwrap(), m);
        }
        assert_eq!(CiMethod::parse("ci_l_bc").unwrap(), CiMethod::BootRankConservative);
        assert!(CiMethod::parse("nope").is_err());
    }
}
