//! Lancaster coefficient estimators and the competitor coefficients.
//!
//! The rank estimator correlates van der Waerden scores a(j) =
//! Phi^{-1}(j/(n+1)) of the two rank vectors and the centered squared scores;
//! the moment estimator correlates the raw observations and the squares of
//! the empirically standardized observations. Both report the maximum of the
//! two absolute component correlations.

use std::cell::RefCell;
use std::collections::HashMap;
use std::fmt;
use std::sync::Arc;

use rand::seq::SliceRandom;

use crate::error::{Error, Result};
use crate::normal::quantile_unchecked;
use crate::rng::{self, stream_rng};
use crate::sample::{slice_has_ties, Sample};

/// Which component correlation attained the maximum (ties go to `First`).
#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
pub enum Component {
    First,
    Second,
}

/// A Lancaster coefficient estimate: the two component correlations, their
/// absolute maximum, the winning component, and a tie warning.
///
/// `ties` flags rank ties in either margin. The defining rank formulas stay
/// applicable (ranks use the maximal shared rank), but the asymptotic theory
/// assumes continuous data, so inference on tied data is unguaranteed.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LancasterEstimate {
    pub rho1: f64,
    pub rho2: f64,
    pub value: f64,
    pub winner: Component,
    pub ties: bool,
}

impl LancasterEstimate {
    fn from_components(rho1: f64, rho2: f64, ties: bool) -> Self {
        let (value, winner) = if rho1.abs() >= rho2.abs() {
            (rho1.abs(), Component::First)
        } else {
            (rho2.abs(), Component::Second)
        };
        LancasterEstimate {
            rho1,
            rho2,
            value,
            winner,
            ties,
        }
    }
}

/// Van der Waerden scores for sample size n, with their moments.
///
/// `a[j-1]` = Phi^{-1}(j/(n+1)), `b = a^2`; `s_a2`, `s_b2` are the (1/n)
/// variances of the score vectors. The scores are stored exactly
/// antisymmetric (a(j) = -a(n+1-j)), which makes sign flips of the data
/// reproduce bit-identical absolute coefficients.
#[derive(Debug, Clone, PartialEq)]
pub struct ScoreSet {
    pub a: Vec<f64>,
    pub b: Vec<f64>,
    pub a_bar: f64,
    pub b_bar: f64,
    pub s_a2: f64,
    pub s_b2: f64,
}

fn vdw_scores_uncached(n: usize) -> ScoreSet {
    let denom = (n + 1) as f64;
    let mut a = vec![0.0; n];
    for j in 0..n / 2 {
        let q = quantile_unchecked((j + 1) as f64 / denom);
        a[j] = q;
        a[n - 1 - j] = -q;
    }
    let b: Vec<f64> = a.iter().map(|v| v * v).collect();
    let nf = n as f64;
    let a_bar = a.iter().sum::<f64>() / nf;
    let b_bar = b.iter().sum::<f64>() / nf;
    let s_a2 = a.iter().map(|v| (v - a_bar) * (v - a_bar)).sum::<f64>() / nf;
    let s_b2 = b.iter().map(|v| (v - b_bar) * (v - b_bar)).sum::<f64>() / nf;
    ScoreSet {
        a,
        b,
        a_bar,
        b_bar,
        s_a2,
        s_b2,
    }
}

thread_local! {
    // Studies evaluate tens of thousands of samples at one fixed n; the score
    // vector only depends on n, so cache it per thread (no locks to contend).
    static SCORE_CACHE: RefCell<HashMap<usize, Arc<ScoreSet>>> = RefCell::new(HashMap::new());
}

/// Van der Waerden score set for sample size `n` (cached per thread).
pub fn vdw_scores(n: usize) -> Result<Arc<ScoreSet>> {
    if n < 2 {
        return Err(Error::SampleTooSmall { n, min: 2 });
    }
    SCORE_CACHE.with(|cache| {
        let mut cache = cache.borrow_mut();
        if let Some(s) = cache.get(&n) {
            return Ok(Arc::clone(s));
        }
        let s = Arc::new(vdw_scores_uncached(n));
        if cache.len() > 64 {
            cache.clear();
        }
        cache.insert(n, Arc::clone(&s));
        Ok(s)
    })
}

/// Ranks by the counting definition: rank of v_i = #{j : v_j <= v_i}.
///
/// Tied values share the maximal rank of their group; without ties the result
/// is a permutation of 1..n.
pub fn ranks(v: &[f64]) -> Vec<usize> {
    let n = v.len();
    let mut idx: Vec<usize> = (0..n).collect();
    idx.sort_by(|&i, &j| v[i].partial_cmp(&v[j]).unwrap());
    let mut out = vec![0usize; n];
    let mut i = 0;
    while i < n {
        let mut j = i;
        while j + 1 < n && v[idx[j + 1]] == v[idx[i]] {
            j += 1;
        }
        for k in i..=j {
            out[idx[k]] = j + 1;
        }
        i = j + 1;
    }
    out
}

#[inline]
fn clamp_corr(r: f64) -> f64 {
    r.clamp(-1.0, 1.0)
}

/// Rank components (rho1, rho2, ties) on raw slices.
pub(crate) fn rank_components(xs: &[f64], ys: &[f64]) -> Result<(f64, f64, bool)> {
    let n = xs.len();
    if n < 3 {
        return Err(Error::SampleTooSmall { n, min: 3 });
    }
    let q = ranks(xs);
    let r = ranks(ys);
    let sc = vdw_scores(n)?;
    let mut s1 = 0.0;
    let mut s2 = 0.0;
    for j in 0..n {
        s1 += sc.a[q[j] - 1] * sc.a[r[j] - 1];
        s2 += (sc.b[q[j] - 1] - sc.b_bar) * (sc.b[r[j] - 1] - sc.b_bar);
    }
    let nf = n as f64;
    let rho1 = clamp_corr(s1 / (nf * sc.s_a2));
    let rho2 = clamp_corr(s2 / (nf * sc.s_b2));
    let ties = slice_has_ties(xs) || slice_has_ties(ys);
    Ok((rho1, rho2, ties))
}

/// Rank-based Lancaster coefficient rho_L = max(|rho_R1|, |rho_R2|).
pub fn lancaster_rank(s: &Sample) -> Result<LancasterEstimate> {
    let (rho1, rho2, ties) = rank_components(s.xs(), s.ys())?;
    Ok(LancasterEstimate::from_components(rho1, rho2, ties))
}

/// Standardize in place with the (1/n) variance convention; returns an error
/// on zero variance.
fn standardize(v: &[f64], which: &str) -> Result<Vec<f64>> {
    let n = v.len() as f64;
    let mean = v.iter().sum::<f64>() / n;
    let var = v.iter().map(|x| (x - mean) * (x - mean)).sum::<f64>() / n;
    if var <= 0.0 {
        return Err(Error::degenerate(format!("zero variance in {which}")));
    }
    let sd = var.sqrt();
    Ok(v.iter().map(|x| (x - mean) / sd).collect())
}

/// Moment components (rho1, rho2) on raw slices.
pub(crate) fn linear_components(xs: &[f64], ys: &[f64]) -> Result<(f64, f64)> {
    let n = xs.len();
    if n < 3 {
        return Err(Error::SampleTooSmall { n, min: 3 });
    }
    let nf = n as f64;
    let sx = standardize(xs, "x")?;
    let sy = standardize(ys, "y")?;
    let mut m11 = 0.0;
    let mut m22 = 0.0;
    let mut m40 = 0.0;
    let mut m04 = 0.0;
    for j in 0..n {
        let (u, v) = (sx[j], sy[j]);
        let (u2, v2) = (u * u, v * v);
        m11 += u * v;
        m22 += u2 * v2;
        m40 += u2 * u2;
        m04 += v2 * v2;
    }
    m11 /= nf;
    m22 /= nf;
    m40 /= nf;
    m04 /= nf;
    if m40 <= 1.0 || m04 <= 1.0 {
        return Err(Error::DegenerateKurtosis);
    }
    let rho1 = clamp_corr(m11);
    let rho2 = clamp_corr((m22 - 1.0) / ((m40 - 1.0) * (m04 - 1.0)).sqrt());
    Ok((rho1, rho2))
}

/// Moment-based linear Lancaster coefficient rho_L,l = max(|rho_l1|, |rho_l2|).
pub fn lancaster_linear(s: &Sample) -> Result<LancasterEstimate> {
    let (rho1, rho2) = linear_components(s.xs(), s.ys())?;
    let (tx, ty) = s.has_ties();
    Ok(LancasterEstimate::from_components(rho1, rho2, tx || ty))
}

pub(crate) fn pearson_slices(xs: &[f64], ys: &[f64]) -> Result<f64> {
    let n = xs.len() as f64;
    let mx = xs.iter().sum::<f64>() / n;
    let my = ys.iter().sum::<f64>() / n;
    let mut sxy = 0.0;
    let mut sxx = 0.0;
    let mut syy = 0.0;
    for (x, y) in xs.iter().zip(ys) {
        let dx = x - mx;
        let dy = y - my;
        sxy += dx * dy;
        sxx += dx * dx;
        syy += dy * dy;
    }
    if sxx <= 0.0 || syy <= 0.0 {
        return Err(Error::degenerate("zero variance in a margin".to_string()));
    }
    Ok(clamp_corr(sxy / (sxx * syy).sqrt()))
}

/// Sample Pearson correlation coefficient.
pub fn pearson(s: &Sample) -> Result<f64> {
    if s.len() < 3 {
        return Err(Error::SampleTooSmall {
            n: s.len(),
            min: 3,
        });
    }
    pearson_slices(s.xs(), s.ys())
}

pub(crate) fn spearman_slices(xs: &[f64], ys: &[f64]) -> Result<f64> {
    let rx: Vec<f64> = ranks(xs).into_iter().map(|r| r as f64).collect();
    let ry: Vec<f64> = ranks(ys).into_iter().map(|r| r as f64).collect();
    pearson_slices(&rx, &ry)
}

/// Spearman's rho: Pearson correlation of the rank vectors.
pub fn spearman(s: &Sample) -> Result<f64> {
    if s.len() < 3 {
        return Err(Error::SampleTooSmall {
            n: s.len(),
            min: 3,
        });
    }
    spearman_slices(s.xs(), s.ys())
}

/// Per-element mean absolute difference and the grand mean, via sorting and
/// prefix sums (O(n log n) instead of the O(n^2) pairwise pass).
fn abs_diff_row_means(v: &[f64]) -> (Vec<f64>, f64) {
    let n = v.len();
    let nf = n as f64;
    let mut idx: Vec<usize> = (0..n).collect();
    idx.sort_by(|&i, &j| v[i].partial_cmp(&v[j]).unwrap());
    let mut prefix = 0.0;
    let total: f64 = v.iter().sum();
    let mut row = vec![0.0; n];
    for (pos, &i) in idx.iter().enumerate() {
        prefix += v[i];
        let k = (pos + 1) as f64;
        // sum_j |v_i - v_j| with exactly k sorted values <= v_i counted left
        row[i] = v[i] * (2.0 * k - nf) + total - 2.0 * prefix;
    }
    let grand = row.iter().sum::<f64>() / (nf * nf);
    for r in row.iter_mut() {
        *r /= nf;
    }
    (row, grand)
}

pub(crate) fn distance_correlation_slices(xs: &[f64], ys: &[f64]) -> f64 {
    let n = xs.len();
    let nf = n as f64;
    let (ra, abar) = abs_diff_row_means(xs);
    let (rb, bbar) = abs_diff_row_means(ys);
    let mut sab = 0.0;
    let mut saa = 0.0;
    let mut sbb = 0.0;
    for j in 0..n {
        let (xj, yj) = (xs[j], ys[j]);
        let (raj, rbj) = (ra[j], rb[j]);
        for k in 0..n {
            let a = (xj - xs[k]).abs() - raj - ra[k] + abar;
            let b = (yj - ys[k]).abs() - rbj - rb[k] + bbar;
            sab += a * b;
            saa += a * a;
            sbb += b * b;
        }
    }
    let dcov2 = sab / (nf * nf);
    let denom2 = (saa / (nf * nf)) * (sbb / (nf * nf));
    if denom2 <= 0.0 {
        return 0.0;
    }
    let r2 = dcov2 / denom2.sqrt();
    if r2 <= 0.0 {
        0.0
    } else {
        r2.sqrt().min(1.0)
    }
}

/// Empirical distance correlation of Szekely, Rizzo and Bakirov
/// (double-centered distance matrices, V-statistic normalization).
pub fn distance_correlation(s: &Sample) -> Result<f64> {
    Ok(distance_correlation_slices(s.xs(), s.ys()))
}

pub(crate) fn xi_slices(xs: &[f64], ys: &[f64], seed: u64) -> f64 {
    let n = xs.len();
    let mut idx: Vec<usize> = (0..n).collect();
    if slice_has_ties(xs) {
        // Ties in x are broken uniformly at random; a stable sort afterwards
        // keeps the shuffled order within each tie group.
        let mut rng = stream_rng(seed, &[rng::DOMAIN_XI_TIEBREAK]);
        idx.shuffle(&mut rng);
    }
    idx.sort_by(|&i, &j| xs[i].partial_cmp(&xs[j]).unwrap());
    let r = ranks(ys);
    let mut num = 0.0;
    for w in idx.windows(2) {
        num += (r[w[1]] as f64 - r[w[0]] as f64).abs();
    }
    let nf = n as f64;
    1.0 - 3.0 * num / (nf * nf - 1.0)
}

/// Chatterjee's xi coefficient, with seeded uniform tie-breaking on x.
pub fn xi_coefficient_seeded(s: &Sample, seed: u64) -> Result<f64> {
    Ok(xi_slices(s.xs(), s.ys(), seed))
}

/// Chatterjee's xi coefficient with the default tie-break seed 0.
pub fn xi_coefficient(s: &Sample) -> Result<f64> {
    xi_coefficient_seeded(s, 0)
}

/// The correlation coefficients the study drivers and the CLI know about.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, serde::Serialize, serde::Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Coefficient {
    Pearson,
    Spearman,
    LancasterRank,
    LancasterLinear,
    DistanceCorrelation,
    Xi,
}

impl Coefficient {
    pub const ALL: [Coefficient; 6] = [
        Coefficient::Pearson,
        Coefficient::Spearman,
        Coefficient::LancasterRank,
        Coefficient::LancasterLinear,
        Coefficient::DistanceCorrelation,
        Coefficient::Xi,
    ];

    pub fn name(&self) -> &'static str {
        match self {
            Coefficient::Pearson => "pearson",
            Coefficient::Spearman => "spearman",
            Coefficient::LancasterRank => "lancaster_rank",
            Coefficient::LancasterLinear => "lancaster_linear",
            Coefficient::DistanceCorrelation => "dcor",
            Coefficient::Xi => "xi",
        }
    }

    pub fn parse(name: &str) -> Result<Self> {
        match name.to_ascii_lowercase().as_str() {
            "pearson" => Ok(Coefficient::Pearson),
            "spearman" => Ok(Coefficient::Spearman),
            "lancaster_rank" | "rank" | "rho_l" => Ok(Coefficient::LancasterRank),
            "lancaster_linear" | "linear" | "rho_ll" => Ok(Coefficient::LancasterLinear),
            "dcor" | "distance_correlation" => Ok(Coefficient::DistanceCorrelation),
            "xi" => Ok(Coefficient::Xi),
            other => Err(Error::InvalidConfig(format!(
                "unknown coefficient '{other}'; valid: pearson, spearman, lancaster_rank, \
                 lancaster_linear, dcor, xi"
            ))),
        }
    }

    /// Point value of the coefficient on a sample.
    pub fn eval(&self, s: &Sample, seed: u64) -> Result<f64> {
        match self {
            Coefficient::Pearson => pearson(s),
            Coefficient::Spearman => spearman(s),
            Coefficient::LancasterRank => Ok(lancaster_rank(s)?.value),
            Coefficient::LancasterLinear => Ok(lancaster_linear(s)?.value),
            Coefficient::DistanceCorrelation => distance_correlation(s),
            Coefficient::Xi => xi_coefficient_seeded(s, seed),
        }
    }

    /// The statistic compared in permutation tests. Signed coefficients are
    /// taken in absolute value (two-sided test); xi keeps its sign (the usual
    /// one-sided right-tail test).
    pub(crate) fn permutation_statistic(&self, xs: &[f64], ys: &[f64], seed: u64) -> Result<f64> {
        match self {
            Coefficient::Pearson => Ok(pearson_slices(xs, ys)?.abs()),
            Coefficient::Spearman => Ok(spearman_slices(xs, ys)?.abs()),
            Coefficient::LancasterRank => {
                let (r1, r2, _) = rank_components(xs, ys)?;
                Ok(r1.abs().max(r2.abs()))
            }
            Coefficient::LancasterLinear => {
                let (r1, r2) = linear_components(xs, ys)?;
                Ok(r1.abs().max(r2.abs()))
            }
            Coefficient::DistanceCorrelation => Ok(distance_correlation_slices(xs, ys)),
            Coefficient::Xi => Ok(xi_slices(xs, ys, seed)),
        }
    }
}

impl fmt::Display for Coefficient {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sample(xs: &[f64], ys: &[f64]) -> Sample {
        Sample::new(xs.to_vec(), ys.to_vec()).unwrap()
    }

    #[test]
    fn ranks_basic() {
        assert_eq!(ranks(&[3.0, 1.0, 2.0]), vec![3, 1, 2]);
        assert_eq!(ranks(&[5.0]), vec![1]);
        assert_eq!(ranks(&[1.0, 1.0, 2.0]), vec![2, 2, 3]);
    }

    #[test]
    fn ranks_match_counting_definition() {
        let v = [2.0, -1.0, 2.0, 0.5, 2.0, -1.0];
        let r = ranks(&v);
        for i in 0..v.len() {
            let count = v.iter().filter(|&&x| x <= v[i]).count();
            assert_eq!(r[i], count, "element {i}");
        }
    }

    #[test]
    fn vdw_scores_small_n() {
        assert!(vdw_scores(1).is_err());
        let s = vdw_scores(3).unwrap();
        assert!((s.a[0] + 0.6744898).abs() < 1e-6);
        assert_eq!(s.a[1], 0.0);
        assert_eq!(s.a[2], -s.a[0]);
        assert!((s.b[0] - 0.4549364).abs() < 1e-6);
        assert!((s.b_bar - 0.3032909).abs() < 1e-6);
    }

    #[test]
    fn vdw_scores_sum_to_zero() {
        for n in [2, 5, 10, 101, 1000] {
            let s = vdw_scores(n).unwrap();
            assert!(s.a.iter().sum::<f64>().abs() <= 1e-10, "n = {n}");
        }
    }

    #[test]
    fn vdw_score_variances_approach_limits() {
        // s_a^2 -> 1 and s_b^2 -> 2 as n grows.
        let s = vdw_scores(20_000).unwrap();
        assert!((s.s_a2 - 1.0).abs() < 2e-3, "s_a2 = {}", s.s_a2);
        assert!((s.s_b2 - 2.0).abs() < 2e-2, "s_b2 = {}", s.s_b2);
    }

    #[test]
    fn lancaster_rank_perfect_dependence() {
        let xs = vec![0.3, -1.2, 2.4, 0.9, -0.1];
        let s = sample(&xs, &xs);
        let est = lancaster_rank(&s).unwrap();
        assert!((est.rho1 - 1.0).abs() < 1e-12);
        assert_eq!(est.value, 1.0);
        assert_eq!(est.winner, Component::First);
        assert!(!est.ties);
    }

    #[test]
    fn lancaster_rank_reversed() {
        let xs = vec![0.3, -1.2, 2.4, 0.9, -0.1];
        let neg: Vec<f64> = xs.iter().map(|v| -v).collect();
        let est = lancaster_rank(&sample(&xs, &neg)).unwrap();
        assert!((est.rho1 + 1.0).abs() < 1e-12);
        assert!((est.rho2 - 1.0).abs() < 1e-12);
        assert_eq!(est.value, 1.0);
    }

    #[test]
    fn lancaster_rank_too_small() {
        let s = sample(&[1.0, 2.0], &[2.0, 1.0]);
        assert!(matches!(
            lancaster_rank(&s),
            Err(Error::SampleTooSmall { min: 3, .. })
        ));
    }

    #[test]
    fn lancaster_rank_flags_ties() {
        let est = lancaster_rank(&sample(&[1.0, 1.0, 2.0, 3.0], &[4.0, 3.0, 2.0, 1.0])).unwrap();
        assert!(est.ties);
    }

    #[test]
    fn lancaster_linear_affine() {
        let xs = vec![0.0, 1.0, 2.0, 3.0, 4.5];
        let ys: Vec<f64> = xs.iter().map(|v| 2.0 * v + 1.0).collect();
        let est = lancaster_linear(&sample(&xs, &ys)).unwrap();
        assert!((est.rho1 - 1.0).abs() < 1e-12);
        assert_eq!(est.value, est.rho1.abs().max(est.rho2.abs()));
    }

    #[test]
    fn lancaster_linear_matches_raw_moment_oracle() {
        // Independent route: the expansion of the standardized moments in raw
        // moments, evaluated directly.
        let xs: [f64; 5] = [1.0, 2.0, 3.0, 4.0, 5.0];
        let ys: [f64; 5] = [2.0, 1.0, 4.0, 3.0, 5.0];
        let n = xs.len() as f64;
        let m = |k: u32, l: u32| -> f64 {
            xs.iter()
                .zip(&ys)
                .map(|(x, y)| x.powi(k as i32) * y.powi(l as i32))
                .sum::<f64>()
                / n
        };
        let (m10, m01) = (m(1, 0), m(0, 1));
        let sx2 = m(2, 0) - m10 * m10;
        let sy2 = m(0, 2) - m01 * m01;
        let rho1 = (m(1, 1) - m10 * m01) / (sx2 * sy2).sqrt();
        let m22 = (m(2, 2) - 2.0 * m(2, 1) * m01 - 2.0 * m(1, 2) * m10
            + m(2, 0) * m01 * m01
            + m10 * m10 * m(0, 2)
            + 4.0 * m(1, 1) * m10 * m01
            - 3.0 * m10 * m10 * m01 * m01)
            / (sx2 * sy2);
        let m40 = (m(4, 0) - 4.0 * m(3, 0) * m10 + 6.0 * m(2, 0) * m10 * m10
            - 3.0 * m10.powi(4))
            / (sx2 * sx2);
        let m04 = (m(0, 4) - 4.0 * m(0, 3) * m01 + 6.0 * m(0, 2) * m01 * m01
            - 3.0 * m01.powi(4))
            / (sy2 * sy2);
        let rho2 = (m22 - 1.0) / ((m40 - 1.0) * (m04 - 1.0)).sqrt();
        let expected = rho1.abs().max(rho2.abs());

        let est = lancaster_linear(&sample(&xs, &ys)).unwrap();
        assert!((est.rho1 - rho1).abs() < 1e-12);
        assert!((est.rho2 - rho2).abs() < 1e-12);
        assert!((est.value - expected).abs() < 1e-12);
    }

    #[test]
    fn lancaster_linear_degenerate_cases() {
        let s = sample(&[1.0, 1.0, 1.0, 1.0], &[1.0, 2.0, 3.0, 4.0]);
        assert!(matches!(
            lancaster_linear(&s),
            Err(Error::DegenerateSample(_))
        ));
        // Two-point symmetric margin: standardized fourth moment is exactly 1.
        let s = sample(&[-1.0, 1.0, -1.0, 1.0], &[0.0, 1.0, 2.0, 3.0]);
        assert!(matches!(
            lancaster_linear(&s),
            Err(Error::DegenerateKurtosis)
        ));
    }

    #[test]
    fn pearson_hand_value() {
        let s = sample(&[1.0, 2.0, 3.0], &[3.0, 1.0, 2.0]);
        assert!((pearson(&s).unwrap() + 0.5).abs() < 1e-12);
        let t = sample(&[1.0, 2.0, 3.0], &[1.0, 2.0, 3.0]);
        assert!((pearson(&t).unwrap() - 1.0).abs() < 1e-12);
        assert!((spearman(&t).unwrap() - 1.0).abs() < 1e-12);
    }

    #[test]
    fn dcor_perfect_and_toy() {
        let xs = vec![0.1, 0.7, -1.3, 2.2];
        let s = sample(&xs, &xs);
        assert!((distance_correlation(&s).unwrap() - 1.0).abs() < 1e-10);

        // Brute-force double-centering oracle on a 4-point sample.
        let ys = vec![1.0, -0.4, 0.9, 0.3];
        let n = 4usize;
        let dist = |v: &[f64]| {
            let mut d = vec![vec![0.0; n]; n];
            for i in 0..n {
                for j in 0..n {
                    d[i][j] = (v[i] - v[j]).abs();
                }
            }
            d
        };
        let center = |d: &Vec<Vec<f64>>| {
            let nf = n as f64;
            let row: Vec<f64> = d.iter().map(|r| r.iter().sum::<f64>() / nf).collect();
            let grand = row.iter().sum::<f64>() / nf;
            let mut c = vec![vec![0.0; n]; n];
            for i in 0..n {
                for j in 0..n {
                    c[i][j] = d[i][j] - row[i] - row[j] + grand;
                }
            }
            c
        };
        let a = center(&dist(&xs));
        let b = center(&dist(&ys));
        let nf = (n * n) as f64;
        let mut vab = 0.0;
        let mut vaa = 0.0;
        let mut vbb = 0.0;
        for i in 0..n {
            for j in 0..n {
                vab += a[i][j] * b[i][j];
                vaa += a[i][j] * a[i][j];
                vbb += b[i][j] * b[i][j];
            }
        }
        let oracle = ((vab / nf) / ((vaa / nf) * (vbb / nf)).sqrt()).sqrt();
        let got = distance_correlation(&sample(&xs, &ys)).unwrap();
        assert!((got - oracle).abs() < 1e-12, "{got} vs {oracle}");
    }

    #[test]
    fn dcor_constant_margin_is_zero() {
        let s = sample(&[1.0, 1.0, 1.0], &[1.0, 2.0, 3.0]);
        assert_eq!(distance_correlation(&s).unwrap(), 0.0);
    }

    #[test]
    fn xi_identity_closed_form() {
        let xs: Vec<f64> = (0..100).map(|i| i as f64).collect();
        let s = sample(&xs, &xs);
        let xi = xi_coefficient(&s).unwrap();
        assert!((xi - (1.0 - 3.0 / 101.0)).abs() < 1e-12);
    }

    #[test]
    fn xi_near_zero_under_shuffle() {
        // Randomly re-paired margins; xi concentrates near 0 at n = 1000.
        let n = 1000;
        let xs: Vec<f64> = (0..n).map(|i| i as f64).collect();
        let mut ys = xs.clone();
        ys.shuffle(&mut stream_rng(2024, &[1]));
        let s = sample(&xs, &ys);
        let xi = xi_coefficient(&s).unwrap();
        assert!(xi.abs() < 0.07, "xi = {xi}");
    }

    #[test]
    fn xi_tie_break_is_seeded() {
        let xs = vec![1.0, 1.0, 1.0, 1.0, 2.0, 2.0, 2.0, 2.0];
        let ys = vec![5.0, 1.0, 7.0, 2.0, 8.0, 3.0, 6.0, 4.0];
        let s = sample(&xs, &ys);
        let a = xi_coefficient_seeded(&s, 11).unwrap();
        let b = xi_coefficient_seeded(&s, 11).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn coefficient_names_roundtrip() {
        for c in Coefficient::ALL {
            assert_eq!(Coefficient::parse(c.name()).unwrap(), c);
        }
        assert!(Coefficient::parse("nope").is_err());
    }
}
